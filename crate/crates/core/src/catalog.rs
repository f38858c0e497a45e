//! The certified list of indecomposables with precomputed Hom, Ext¹ and τ tables.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use rayon::prelude::*;

use crate::ar::{enumerate_indecomposables, ext1_dim, tau, Certificate, Enumeration};
use crate::decompose::{decompose, indecomposables_isomorphic};
use crate::error::{Error, Result};
use crate::ids::{IndId, IndSet, IndecObject, StrObject, MAX_INDECOMPOSABLES};
use crate::quiver::BoundQuiverAlgebra;
use crate::rep::{hom_dim, quotient_by_trace, trace, Rep};

/// Multiset of catalogued indecomposables.
pub type Parts = Vec<(IndId, usize)>;

pub struct Catalog {
    algebra: Arc<BoundQuiverAlgebra>,
    modules: Vec<Rep>,
    labels: Vec<String>,
    bound: Vec<usize>,
    certificate: Certificate,
    hom: Vec<Vec<usize>>,
    ext: Vec<Vec<usize>>,
    tau: Vec<Parts>,
    /// `hom_tau[m][x] = dim Hom(X, τM)`.
    hom_tau: Vec<Vec<usize>>,
    projective_at: Vec<IndId>,
    vertex_of_projective: Vec<Option<usize>>,
    tau_rigid: IndSet,
    gen_cache: RwLock<HashMap<IndSet, IndSet>>,
    filtgen_cache: RwLock<HashMap<IndSet, IndSet>>,
    quotient_cache: RwLock<HashMap<(IndSet, IndId), Parts>>,
}

impl std::fmt::Debug for Catalog {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Catalog").field("labels", &self.labels).finish()
    }
}

/// `d1d2…dn#k`, with dots between entries when some entry has two digits.
pub fn make_label(dims: &[usize], ordinal: usize) -> String {
    let sep = if dims.iter().any(|&d| d >= 10) { "." } else { "" };
    let body: Vec<String> = dims.iter().map(usize::to_string).collect();
    format!("{}#{}", body.join(sep), ordinal)
}

impl Catalog {
    pub fn build(algebra: &Arc<BoundQuiverAlgebra>, bound: Option<Vec<usize>>) -> Result<Catalog> {
        Catalog::from_enumeration(algebra, enumerate_indecomposables(algebra, bound)?)
    }

    pub fn from_enumeration(algebra: &Arc<BoundQuiverAlgebra>, e: Enumeration) -> Result<Catalog> {
        let Enumeration { modules, bound, certificate } = e;
        let k = modules.len();
        if k > MAX_INDECOMPOSABLES {
            return Err(Error::TooManyIndecomposables(k));
        }
        let mut labels = Vec::with_capacity(k);
        for (i, m) in modules.iter().enumerate() {
            let ordinal = modules[..i].iter().filter(|x| x.dim_vector() == m.dim_vector()).count() + 1;
            labels.push(make_label(m.dim_vector(), ordinal));
        }
        let hom: Vec<Vec<usize>> = modules
            .par_iter()
            .map(|a| modules.iter().map(|b| hom_dim(a, b)).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?;
        let ext: Vec<Vec<usize>> = modules
            .par_iter()
            .map(|a| modules.iter().map(|b| ext1_dim(a, b)).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?;
        let mut projective_at = Vec::new();
        let mut vertex_of_projective = vec![None; k];
        for v in 0..algebra.rank() {
            let p = Rep::projective(algebra, v)?;
            let id = find_iso(&modules, &p)?.ok_or(Error::NotCatalogued)?;
            vertex_of_projective[id.0] = Some(v);
            projective_at.push(id);
        }
        let mut catalog = Catalog {
            algebra: algebra.clone(),
            modules,
            labels,
            bound,
            certificate,
            hom,
            ext,
            tau: Vec::new(),
            hom_tau: Vec::new(),
            projective_at,
            vertex_of_projective,
            tau_rigid: IndSet::EMPTY,
            gen_cache: RwLock::default(),
            filtgen_cache: RwLock::default(),
            quotient_cache: RwLock::default(),
        };
        let taus: Vec<Parts> = catalog.modules.par_iter().map(|m| catalog.identify(&tau(m)?)).collect::<Result<_>>()?;
        let hom_tau: Vec<Vec<usize>> = taus
            .iter()
            .map(|parts| (0..k).map(|x| parts.iter().map(|(p, c)| c * catalog.hom[x][p.0]).sum()).collect())
            .collect();
        catalog.tau_rigid = (0..k).filter(|&i| hom_tau[i][i] == 0).map(IndId).collect();
        catalog.tau = taus;
        catalog.hom_tau = hom_tau;
        Ok(catalog)
    }

    pub fn algebra(&self) -> &Arc<BoundQuiverAlgebra> {
        &self.algebra
    }

    pub fn rank(&self) -> usize {
        self.algebra.rank()
    }

    pub fn len(&self) -> usize {
        self.modules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modules.is_empty()
    }

    pub fn ids(&self) -> impl Iterator<Item = IndId> {
        (0..self.modules.len()).map(IndId)
    }

    pub fn all(&self) -> IndSet {
        IndSet::full(self.modules.len())
    }

    pub fn module(&self, id: IndId) -> &Rep {
        &self.modules[id.0]
    }

    pub fn modules(&self) -> &[Rep] {
        &self.modules
    }

    pub fn label(&self, id: IndId) -> &str {
        &self.labels[id.0]
    }

    pub fn bound(&self) -> &[usize] {
        &self.bound
    }

    pub fn certificate(&self) -> &Certificate {
        &self.certificate
    }

    pub fn is_certified(&self) -> bool {
        self.certificate.is_certified()
    }

    pub fn dims(&self, id: IndId) -> &[usize] {
        self.modules[id.0].dim_vector()
    }

    pub fn hom(&self, a: IndId, b: IndId) -> usize {
        self.hom[a.0][b.0]
    }

    pub fn ext(&self, a: IndId, b: IndId) -> usize {
        self.ext[a.0][b.0]
    }

    /// `dim Hom(X, τM)`.
    pub fn hom_to_tau(&self, x: IndId, m: IndId) -> usize {
        self.hom_tau[m.0][x.0]
    }

    pub fn tau_parts(&self, id: IndId) -> &Parts {
        &self.tau[id.0]
    }

    pub fn is_tau_rigid(&self, id: IndId) -> bool {
        self.tau_rigid.contains(id)
    }

    pub fn tau_rigid(&self) -> IndSet {
        self.tau_rigid
    }

    pub fn projective(&self, vertex: usize) -> IndId {
        self.projective_at[vertex]
    }

    pub fn projectives(&self) -> IndSet {
        self.projective_at.iter().copied().collect()
    }

    pub fn is_projective(&self, id: IndId) -> bool {
        self.vertex_of_projective[id.0].is_some()
    }

    pub fn vertex_of_projective(&self, id: IndId) -> Option<usize> {
        self.vertex_of_projective[id.0]
    }

    /// Indecomposable support τ-rigid objects: τ-rigid modules, then shifted projectives.
    pub fn str_indecomposables(&self) -> Vec<IndecObject> {
        self.tau_rigid
            .iter()
            .map(IndecObject::Module)
            .chain(self.ids().filter(|&i| self.is_projective(i)).map(IndecObject::Shifted))
            .collect()
    }

    /// Find an indecomposable by label or by the aliases `S<vertex>` and `P<vertex>`.
    pub fn lookup(&self, name: &str) -> Result<IndId> {
        if let Some(i) = self.labels.iter().position(|l| l == name) {
            return Ok(IndId(i));
        }
        if let Some((dims, ordinal)) = name.split_once('#').filter(|(d, _)| d.contains('.')) {
            let dotted = |i: usize| {
                let body: Vec<String> = self.dims(IndId(i)).iter().map(usize::to_string).collect();
                self.labels[i].split_once('#').is_some_and(|(_, k)| k == ordinal) && body.join(".") == dims
            };
            if let Some(i) = (0..self.len()).find(|&i| dotted(i)) {
                return Ok(IndId(i));
            }
        }
        let vertex = |rest: &str| {
            self.algebra
                .quiver()
                .vertices
                .iter()
                .position(|v| v == rest)
                .or_else(|| rest.parse::<usize>().ok().filter(|&k| (1..=self.rank()).contains(&k)).map(|k| k - 1))
        };
        if let Some(rest) = name.strip_prefix('P') {
            if let Some(v) = vertex(rest) {
                return Ok(self.projective(v));
            }
        }
        if let Some(rest) = name.strip_prefix('S') {
            if let Some(v) = vertex(rest) {
                let mut d = vec![0; self.rank()];
                d[v] = 1;
                if let Some(i) = self.modules.iter().position(|m| m.dim_vector() == d.as_slice()) {
                    return Ok(IndId(i));
                }
            }
        }
        Err(Error::UnknownModule(name.to_string()))
    }

    pub fn object_label(&self, x: IndecObject) -> String {
        match x {
            IndecObject::Module(i) => self.labels[i.0].clone(),
            IndecObject::Shifted(i) => format!("{}[1]", self.labels[i.0]),
        }
    }

    /// Parse `label` or `label[1]`.
    pub fn parse_object(&self, text: &str) -> Result<IndecObject> {
        let t = text.trim();
        match t.strip_suffix("[1]") {
            Some(base) => {
                let id = self.lookup(base)?;
                if !self.is_projective(id) {
                    return Err(Error::UnknownModule(t.to_string()));
                }
                Ok(IndecObject::Shifted(id))
            }
            None => Ok(IndecObject::Module(self.lookup(t)?)),
        }
    }

    pub fn set_label(&self, s: IndSet) -> String {
        let parts: Vec<&str> = s.iter().map(|i| self.label(i)).collect();
        format!("{{{}}}", parts.join(", "))
    }

    pub fn str_label(&self, t: StrObject) -> String {
        let parts: Vec<String> = t.summands().map(|x| self.object_label(x)).collect();
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" ⊕ ")
        }
    }

    /// Express a module as a multiset of catalogued indecomposables.
    pub fn identify(&self, m: &Rep) -> Result<Parts> {
        let mut out: Parts = Vec::new();
        for (part, mult) in decompose(m)?.parts {
            let id = find_iso(&self.modules, &part)?.ok_or(Error::NotCatalogued)?;
            match out.iter_mut().find(|(i, _)| *i == id) {
                Some(e) => e.1 += mult,
                None => out.push((id, mult)),
            }
        }
        out.sort();
        Ok(out)
    }

    pub fn identify_indecomposable(&self, m: &Rep) -> Result<IndId> {
        find_iso(&self.modules, m)?.ok_or(Error::NotCatalogued)
    }

    fn reps(&self, s: IndSet) -> Vec<&Rep> {
        s.iter().map(|i| &self.modules[i.0]).collect()
    }

    /// Indecomposables in `Gen(⊕ s)`.
    pub fn gen(&self, s: IndSet) -> IndSet {
        if let Some(&g) = self.gen_cache.read().expect("cache").get(&s) {
            return g;
        }
        let sources = self.reps(s);
        let g: IndSet = self
            .ids()
            .filter(|&x| {
                let m = &self.modules[x.0];
                s.contains(x) || trace(&sources, m).expect("same algebra").0.dim() == m.dim()
            })
            .collect();
        self.gen_cache.write().expect("cache").insert(s, g);
        g
    }

    /// `f_S(X) = X / trace(S, X)` as catalogued parts.
    pub fn quotient(&self, s: IndSet, x: IndId) -> Parts {
        if let Some(q) = self.quotient_cache.read().expect("cache").get(&(s, x)) {
            return q.clone();
        }
        let q = quotient_by_trace(&self.reps(s), &self.modules[x.0])
            .and_then(|r| self.identify(&r))
            .expect("quotients of catalogued modules are catalogued");
        self.quotient_cache.write().expect("cache").insert((s, x), q.clone());
        q
    }

    /// Indecomposables in `T(S) = Filt(Gen S)`: `X` belongs iff its trace is nonzero and
    /// every summand of `X / trace(S, X)` belongs.
    pub fn filtgen(&self, s: IndSet) -> IndSet {
        if let Some(&g) = self.filtgen_cache.read().expect("cache").get(&s) {
            return g;
        }
        let mut order: Vec<IndId> = self.ids().collect();
        order.sort_by_key(|&i| self.modules[i.0].dim());
        let mut members = IndSet::EMPTY;
        for x in order {
            let q = self.quotient(s, x);
            let dim_q: usize = q.iter().map(|(p, c)| c * self.modules[p.0].dim()).sum();
            if dim_q < self.modules[x.0].dim() && q.iter().all(|(p, _)| members.contains(*p)) {
                members = members.with(x);
            }
        }
        self.filtgen_cache.write().expect("cache").insert(s, members);
        members
    }
}

fn find_iso(modules: &[Rep], m: &Rep) -> Result<Option<IndId>> {
    for (i, x) in modules.iter().enumerate() {
        if x.dim_vector() == m.dim_vector() && indecomposables_isomorphic(x, m)? {
            return Ok(Some(IndId(i)));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ar::hom_into_tau_dim;
    use crate::quiver::AlgebraDescription;

    fn catalog(n: usize, rad2: bool) -> Catalog {
        let alg = BoundQuiverAlgebra::build(&AlgebraDescription::linear(n, rad2)).unwrap();
        Catalog::build(&alg, None).unwrap()
    }

    #[test]
    fn labels_and_aliases_on_a2() {
        let c = catalog(2, false);
        let labels: Vec<&str> = c.ids().map(|i| c.label(i)).collect();
        assert_eq!(labels, vec!["01#1", "10#1", "11#1"]);
        assert_eq!(c.lookup("S1").unwrap(), IndId(1));
        assert_eq!(c.lookup("S2").unwrap(), IndId(0));
        assert_eq!(c.lookup("P1").unwrap(), IndId(2));
        assert_eq!(c.lookup("P2").unwrap(), IndId(0));
        assert!(c.lookup("Q7").is_err());
        assert_eq!(make_label(&[10, 1], 2), "10.1#2");
    }

    #[test]
    fn tau_table_matches_ar_formula() {
        let c = catalog(3, true);
        for m in c.ids() {
            for x in c.ids() {
                assert_eq!(c.hom_to_tau(x, m), hom_into_tau_dim(c.module(x), c.module(m)).unwrap());
            }
        }
    }

    #[test]
    fn str_indecomposables_counts() {
        let c = catalog(2, false);
        assert_eq!(c.str_indecomposables().len(), 5);
        let c = catalog(3, true);
        assert_eq!(c.tau_rigid().len(), 5);
        assert_eq!(c.str_indecomposables().len(), 8);
    }

    #[test]
    fn gen_and_filtgen_on_a2() {
        let c = catalog(2, false);
        let (s2, s1, p1) = (IndId(0), IndId(1), IndId(2));
        assert_eq!(c.gen(IndSet::single(p1)), IndSet::single(p1).with(s1));
        assert!(!c.gen(IndSet::single(p1)).contains(s2));
        assert_eq!(c.gen(IndSet::single(s1)), IndSet::single(s1));
        let simples = IndSet::single(s1).with(s2);
        assert!(!c.gen(simples).contains(p1));
        assert!(c.filtgen(simples).contains(p1));
        assert_eq!(c.quotient(IndSet::single(s2), p1), vec![(s1, 1)]);
        assert!(c.quotient(IndSet::single(p1), s1).is_empty());
    }
}
