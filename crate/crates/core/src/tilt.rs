//! Torsion classes, τ-perpendicular categories and the E-map, relative to a wide subcategory.
//!
//! A wide subcategory is handled through its set of indecomposables. Relative τ-rigidity
//! and `⊥τ_W` use the Auslander–Smalø criterion inside `W`: `Hom(X, τ_W M) = 0` iff
//! `Ext¹(M, Y) = 0` for every `Y ∈ Gen X ∩ W`.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use crate::catalog::{Catalog, Parts};
use crate::error::{Error, Result};
use crate::ids::{IndId, IndSet, IndecObject, StrObject};
use crate::rep::{trace, Rep, RepMorphism};

/// A wide subcategory: its indecomposables and its relative projectives.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Wide {
    pub members: IndSet,
    pub rel_proj: IndSet,
}

impl Wide {
    pub fn rank(&self) -> usize {
        self.rel_proj.len()
    }

    pub fn contains(&self, x: IndId) -> bool {
        self.members.contains(x)
    }
}

/// A torsion class with its Ext-projectives split into split and non-split parts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TorsionClass {
    pub members: IndSet,
    pub split_proj: IndSet,
    pub nonsplit_proj: IndSet,
    /// Indecomposable (relative) projectives `Q` with `Hom(Q, 𝒯) = 0`.
    pub p_t: IndSet,
}

impl TorsionClass {
    pub fn ext_proj(&self) -> IndSet {
        self.split_proj.union(self.nonsplit_proj)
    }
}

pub type EKey = (IndSet, StrObject, IndecObject);

pub struct Engine {
    catalog: Arc<Catalog>,
    whole: Wide,
    rel_proj_cache: RwLock<HashMap<IndSet, IndSet>>,
    j_cache: RwLock<HashMap<(IndSet, StrObject), Wide>>,
    emap_cache: RwLock<HashMap<EKey, IndecObject>>,
    emap_override: RwLock<HashMap<EKey, IndecObject>>,
}

impl std::fmt::Debug for Engine {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Engine").field("catalog", &self.catalog).finish()
    }
}

impl Engine {
    /// An engine over a certified catalogue.
    pub fn new(catalog: Arc<Catalog>) -> Result<Engine> {
        if !catalog.is_certified() {
            let c = catalog.certificate();
            return Err(Error::NotCertifiablyComplete(format!(
                "{} indecomposables, {} with the enlarged bound",
                c.count, c.count_at_bound_plus_one
            )));
        }
        let whole = Wide { members: catalog.all(), rel_proj: catalog.projectives() };
        Ok(Engine {
            catalog,
            whole,
            rel_proj_cache: RwLock::default(),
            j_cache: RwLock::default(),
            emap_cache: RwLock::default(),
            emap_override: RwLock::default(),
        })
    }

    pub fn catalog(&self) -> &Arc<Catalog> {
        &self.catalog
    }

    /// `mods Λ` as a wide subcategory.
    pub fn whole(&self) -> Wide {
        self.whole
    }

    pub fn rank(&self) -> usize {
        self.catalog.rank()
    }

    fn is_whole(&self, w: Wide) -> bool {
        w.members == self.whole.members
    }

    /// The wide subcategory with the given indecomposables (wideness is not checked).
    pub fn wide(&self, members: IndSet) -> Wide {
        Wide { members, rel_proj: self.rel_proj(members) }
    }

    /// Objects of `w` with no extensions into `w`.
    pub fn rel_proj(&self, w: IndSet) -> IndSet {
        if let Some(&r) = self.rel_proj_cache.read().expect("cache").get(&w) {
            return r;
        }
        let r = self.ext_proj(w);
        self.rel_proj_cache.write().expect("cache").insert(w, r);
        r
    }

    // ---- Gen, Filt and perpendiculars -------------------------------------------------

    pub fn gen(&self, s: IndSet) -> IndSet {
        self.catalog.gen(s)
    }

    pub fn gen_w(&self, w: Wide, s: IndSet) -> IndSet {
        self.catalog.gen(s).intersect(w.members)
    }

    pub fn filtgen(&self, s: IndSet) -> IndSet {
        self.catalog.filtgen(s)
    }

    pub fn filtgen_w(&self, w: Wide, s: IndSet) -> IndSet {
        self.catalog.filtgen(s).intersect(w.members)
    }

    /// `f_S(X)`.
    pub fn quotient(&self, s: IndSet, x: IndId) -> Parts {
        self.catalog.quotient(s, x)
    }

    /// `S^⊥`.
    pub fn right_perp(&self, s: IndSet) -> IndSet {
        let c = &self.catalog;
        c.ids().filter(|&x| s.iter().all(|m| c.hom(m, x) == 0)).collect()
    }

    /// `⊥S`.
    pub fn left_perp(&self, s: IndSet) -> IndSet {
        let c = &self.catalog;
        c.ids().filter(|&x| s.iter().all(|m| c.hom(x, m) == 0)).collect()
    }

    /// `⊥τM` from the τ table.
    pub fn perp_tau(&self, m: IndSet) -> IndSet {
        let c = &self.catalog;
        c.ids().filter(|&x| m.iter().all(|i| c.hom_to_tau(x, i) == 0)).collect()
    }

    /// `⊥τ_W M` by the Ext criterion inside `w`.
    pub fn perp_tau_w(&self, w: Wide, m: IndSet) -> IndSet {
        let c = &self.catalog;
        w.members
            .iter()
            .filter(|&x| self.gen_w(w, IndSet::single(x)).iter().all(|y| m.iter().all(|i| c.ext(i, y) == 0)))
            .collect()
    }

    /// `⊥τ_W M`, from the τ table when `w` is everything.
    pub fn perp_tau_in(&self, w: Wide, m: IndSet) -> IndSet {
        if self.is_whole(w) {
            self.perp_tau(m)
        } else {
            self.perp_tau_w(w, m)
        }
    }

    // ---- τ-rigidity and support τ-rigid objects --------------------------------------

    /// τ-rigidity of `⊕m` in `mods Λ`, from the τ table.
    pub fn is_rigid(&self, m: IndSet) -> bool {
        let c = &self.catalog;
        m.iter().all(|a| m.iter().all(|b| c.hom_to_tau(a, b) == 0))
    }

    /// τ_W-rigidity of `⊕m`: `Ext¹(m, Gen m ∩ W) = 0`.
    pub fn is_rigid_w(&self, w: Wide, m: IndSet) -> Result<bool> {
        if !m.is_subset(w.members) {
            return Err(Error::NotInW(self.catalog.set_label(m.minus(w.members))));
        }
        let c = &self.catalog;
        Ok(self.gen_w(w, m).iter().all(|y| m.iter().all(|i| c.ext(i, y) == 0)))
    }

    /// τ_W-rigidity of `⊕m`, false when `m` leaves `w`.
    pub fn rigid_in(&self, w: Wide, m: IndSet) -> bool {
        if !m.is_subset(w.members) {
            return false;
        }
        if self.is_whole(w) {
            self.is_rigid(m)
        } else {
            self.is_rigid_w(w, m).unwrap_or(false)
        }
    }

    /// Whether `t` is a support τ-rigid object of `w`.
    pub fn is_support_rigid(&self, w: Wide, t: StrObject) -> bool {
        let c = &self.catalog;
        t.shifted.is_subset(w.rel_proj)
            && self.rigid_in(w, t.modules)
            && t.shifted.iter().all(|p| t.modules.iter().all(|m| c.hom(p, m) == 0))
    }

    /// Indecomposable support τ-rigid objects of `w`: rigid modules, then shifted relative projectives.
    pub fn str_indecomposables(&self, w: Wide) -> Vec<IndecObject> {
        w.members
            .iter()
            .filter(|&x| self.rigid_in(w, IndSet::single(x)))
            .map(IndecObject::Module)
            .chain(w.rel_proj.iter().map(IndecObject::Shifted))
            .collect()
    }

    /// `T ⊕ X` is basic and support τ-rigid in `w`.
    pub fn is_compatible(&self, w: Wide, t: StrObject, x: IndecObject) -> bool {
        !t.contains(x) && self.is_support_rigid(w, t.with(x))
    }

    /// All basic support τ-rigid objects of `w`.
    pub fn support_rigid_objects(&self, w: Wide) -> Vec<StrObject> {
        let mut out = vec![StrObject::ZERO];
        for x in self.str_indecomposables(w) {
            let extended: Vec<StrObject> =
                out.iter().filter(|t| self.is_compatible(w, **t, x)).map(|t| t.with(x)).collect();
            out.extend(extended);
        }
        out.sort();
        out
    }

    /// Basic τ-rigid modules of `w`, as sets of indecomposables.
    pub fn rigid_modules(&self, w: Wide) -> Vec<IndSet> {
        let mut v: Vec<IndSet> =
            self.support_rigid_objects(w).into_iter().filter(|t| t.shifted.is_empty()).map(|t| t.modules).collect();
        v.sort();
        v
    }

    // ---- Torsion classes ---------------------------------------------------------------

    /// Ext-projectives of a subcategory given by its indecomposables.
    pub fn ext_proj(&self, t: IndSet) -> IndSet {
        let c = &self.catalog;
        t.iter().filter(|&q| t.iter().all(|y| c.ext(q, y) == 0)).collect()
    }

    pub fn split_proj(&self, t: IndSet) -> IndSet {
        self.ext_proj(t).iter().filter(|&q| !self.gen(t.without(q)).contains(q)).collect()
    }

    pub fn nonsplit_proj(&self, t: IndSet) -> IndSet {
        self.ext_proj(t).minus(self.split_proj(t))
    }

    pub fn torsion_class(&self, w: Wide, members: IndSet) -> TorsionClass {
        let c = &self.catalog;
        let split = self.split_proj(members);
        TorsionClass {
            members,
            split_proj: split,
            nonsplit_proj: self.ext_proj(members).minus(split),
            p_t: w.rel_proj.iter().filter(|&q| members.iter().all(|y| c.hom(q, y) == 0)).collect(),
        }
    }

    /// The torsion sequence `0 → t_𝒯M → M → f_𝒯M → 0` for a torsion class given by its indecomposables.
    pub fn torsion_sequence(&self, t: IndSet, m: &Rep) -> Result<(RepMorphism, RepMorphism)> {
        let sources: Vec<&Rep> = t.iter().map(|i| self.catalog.module(i)).collect();
        let (_, incl) = trace(&sources, m)?;
        let (_, proj) = incl.cokernel();
        Ok((incl, proj))
    }

    /// Bongartz completion `P(⊥τ_W M)`.
    pub fn bongartz(&self, w: Wide, m: IndSet) -> Result<IndSet> {
        self.require_rigid(w, m)?;
        Ok(self.ext_proj(self.perp_tau_in(w, m)))
    }

    /// Co-Bongartz completion `P(Gen_W M)`.
    pub fn co_bongartz(&self, w: Wide, m: IndSet) -> Result<IndSet> {
        self.require_rigid(w, m)?;
        Ok(self.ext_proj(self.gen_w(w, m)))
    }

    fn require_rigid(&self, w: Wide, m: IndSet) -> Result<()> {
        if !m.is_subset(w.members) {
            return Err(Error::NotInW(self.catalog.set_label(m)));
        }
        if !self.rigid_in(w, m) {
            return Err(Error::NotTauRigid(self.catalog.set_label(m)));
        }
        Ok(())
    }

    // ---- τ-perpendicular categories ----------------------------------------------------

    /// `J_W(M, P) = W ∩ M^⊥ ∩ ⊥τ_W M ∩ P^⊥`, with the rank formula checked.
    pub fn j(&self, w: Wide, t: StrObject) -> Result<Wide> {
        if let Some(&j) = self.j_cache.read().expect("cache").get(&(w.members, t)) {
            return Ok(j);
        }
        let members = w
            .members
            .intersect(self.right_perp(t.modules))
            .intersect(self.perp_tau_in(w, t.modules))
            .intersect(self.right_perp(t.shifted));
        let j = self.wide(members);
        let expected = w.rank().checked_sub(t.summand_count());
        if expected != Some(j.rank()) {
            return Err(Error::RankMismatch {
                object: self.catalog.str_label(t),
                found: j.rank(),
                expected: expected.unwrap_or(0),
            });
        }
        self.j_cache.write().expect("cache").insert((w.members, t), j);
        Ok(j)
    }

    /// `J(M, P)` in `mods Λ`.
    pub fn j_category(&self, t: StrObject) -> Result<Wide> {
        self.j(self.whole, t)
    }

    // ---- E-map -------------------------------------------------------------------------

    /// `E^W_T(X)`, an indecomposable support τ-rigid object of `J_W(T)`.
    pub fn e_map(&self, w: Wide, t: StrObject, x: IndecObject) -> Result<IndecObject> {
        let key = (w.members, t, x);
        if let Some(&y) = self.emap_override.read().expect("cache").get(&key) {
            return Ok(y);
        }
        if let Some(&y) = self.emap_cache.read().expect("cache").get(&key) {
            return Ok(y);
        }
        let y = self.compute_e_map(w, t, x)?;
        self.emap_cache.write().expect("cache").insert(key, y);
        Ok(y)
    }

    fn compute_e_map(&self, w: Wide, t: StrObject, x: IndecObject) -> Result<IndecObject> {
        let c = &self.catalog;
        if !self.is_support_rigid(w, t) || !self.is_compatible(w, t, x) {
            return Err(Error::Incompatible { object: c.object_label(x), with: c.str_label(t) });
        }
        let jt = self.j(w, t)?;
        if let IndecObject::Module(id) = x {
            if !self.gen(t.modules).contains(id) {
                let q = self.quotient(t.modules, id);
                return match q.as_slice() {
                    [(r, 1)] if jt.contains(*r) => Ok(IndecObject::Module(*r)),
                    _ => Err(Error::Mismatch(format!(
                        "f_{}({}) is not an indecomposable of J",
                        c.str_label(t),
                        c.label(id)
                    ))),
                };
            }
        }
        let target = self.j(w, t.with(x))?;
        let matches: Vec<IndId> = jt
            .rel_proj
            .iter()
            .filter(|&r| jt.members.intersect(self.right_perp(IndSet::single(r))) == target.members)
            .collect();
        match matches.as_slice() {
            [r] => Ok(IndecObject::Shifted(*r)),
            _ => Err(Error::NoUniqueMatch { object: c.object_label(x), over: c.str_label(t), count: matches.len() }),
        }
    }

    /// The unique compatible `X` with `E^W_T(X) = Y`.
    pub fn e_inverse(&self, w: Wide, t: StrObject, y: IndecObject) -> Result<IndecObject> {
        let c = &self.catalog;
        let mut found = Vec::new();
        for x in self.str_indecomposables(w) {
            if self.is_compatible(w, t, x) && self.e_map(w, t, x)? == y {
                found.push(x);
            }
        }
        match found.as_slice() {
            [x] => Ok(*x),
            [] => Err(Error::NoPreimage { over: c.str_label(t), target: c.object_label(y) }),
            _ => Err(Error::MultiplePreimages { over: c.str_label(t), target: c.object_label(y), count: found.len() }),
        }
    }

    /// Memoized E-map entries, in a deterministic order.
    pub fn memoized_emap(&self) -> Vec<(EKey, IndecObject)> {
        let mut v: Vec<_> = self.emap_cache.read().expect("cache").iter().map(|(k, v)| (*k, *v)).collect();
        v.sort();
        v
    }

    /// Force `E^W_T(X)` to a chosen value (fault injection for testing the verifiers).
    pub fn inject_emap_fault(&self, w: IndSet, t: StrObject, x: IndecObject, value: IndecObject) {
        self.emap_override.write().expect("cache").insert((w, t, x), value);
    }

    pub fn clear_faults(&self) {
        self.emap_override.write().expect("cache").clear();
    }
}
