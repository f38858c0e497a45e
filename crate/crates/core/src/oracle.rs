//! Slow independent recomputations used to cross-check the engine.
//!
//! Nothing here touches the E-map or ω. Relative τ is computed from minimal presentations by
//! relative projectives, which is τ of `W ≃ mods Γ` read back in `mods Λ`.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use crate::ar::{ext_space, extension_from_cocycle};
use crate::catalog::Catalog;
use crate::decompose::{is_indecomposable, is_isomorphic};
use crate::error::{Error, Result};
use crate::ids::{IndId, IndSet};
use crate::linalg::{Mat, Scalar};
use crate::quiver::BoundQuiverAlgebra;
use crate::rep::{hom_basis, hom_dim, Rep, RepMorphism};
use crate::tilt::{Engine, Wide};

/// `Q₁ → Q₀ → M → 0` with `Q₀, Q₁` sums of relative projectives, both approximations minimal.
#[derive(Clone, Debug)]
pub struct RelPresentation {
    pub q0: Vec<IndId>,
    pub q1: Vec<IndId>,
    pub d: RepMorphism,
}

fn flat_rank(f: crate::linalg::FieldSpec, vectors: &[Vec<Scalar>]) -> usize {
    match vectors.first() {
        None => 0,
        Some(v) => Mat::from_columns(f, v.len(), vectors).rank(),
    }
}

/// Non-invertible endomorphisms of an indecomposable with `End/rad = k`.
fn radical_of_end(r: &Rep) -> Result<Vec<RepMorphism>> {
    let f = r.field();
    let id = RepMorphism::identity(r);
    let mut out = Vec::new();
    for b in hom_basis(r, r)? {
        if b.is_nilpotent() {
            out.push(b);
            continue;
        }
        let candidates: Vec<Scalar> = match f.elements() {
            Some(els) => els,
            None => vec![f.mul(&b.trace(), &f.inv(&f.from_i64(r.dim() as i64)))],
        };
        let shifted = candidates
            .iter()
            .map(|l| b.add(&id.scale(&f.neg(l))))
            .find(RepMorphism::is_nilpotent)
            .ok_or_else(|| Error::Mismatch("endomorphism ring is not split local".into()))?;
        out.push(shifted);
    }
    Ok(out)
}

fn min_approximation(catalog: &Catalog, rs: &[IndId], x: &Rep) -> Result<(Vec<IndId>, RepMorphism)> {
    let f = x.field();
    let mut parts = Vec::new();
    let mut chosen: Vec<RepMorphism> = Vec::new();
    for &j in rs {
        let rj = catalog.module(j);
        let mut span: Vec<Vec<Scalar>> = Vec::new();
        for &i in rs {
            let ri = catalog.module(i);
            let through = if i == j { radical_of_end(rj)? } else { hom_basis(rj, ri)? };
            let hs = hom_basis(ri, x)?;
            for g in &through {
                for h in &hs {
                    span.push(g.then(h).flatten());
                }
            }
        }
        let mut rank = flat_rank(f, &span);
        for h in hom_basis(rj, x)? {
            span.push(h.flatten());
            let r = flat_rank(f, &span);
            if r > rank {
                rank = r;
                parts.push(j);
                chosen.push(h);
            } else {
                span.pop();
            }
        }
    }
    let alg = x.algebra();
    let q = Rep::direct_sum_all(alg, parts.iter().map(|&p| catalog.module(p)))?;
    let maps = (0..x.dim_vector().len())
        .map(|v| chosen.iter().fold(Mat::zeros(f, x.dim_vector()[v], 0), |acc, h| acc.hstack(&h.maps[v])))
        .collect();
    Ok((parts, RepMorphism::new(q, x.clone(), maps)?))
}

pub fn rel_presentation(catalog: &Catalog, rel_proj: IndSet, m: &Rep) -> Result<RelPresentation> {
    let rs: Vec<IndId> = rel_proj.iter().collect();
    let (q0, e) = min_approximation(catalog, &rs, m)?;
    if e.rank() != m.dim() {
        return Err(Error::Mismatch("module is not a quotient of relative projectives".into()));
    }
    let (k, incl) = e.kernel();
    let (q1, a) = min_approximation(catalog, &rs, &k)?;
    if a.rank() != k.dim() {
        return Err(Error::Mismatch("syzygy is not a quotient of relative projectives".into()));
    }
    Ok(RelPresentation { q0, q1, d: a.then(&incl) })
}

/// `dim Hom(N, τ_W M) = dim coker(Hom(Q₀, N) → Hom(Q₁, N))`.
pub fn rel_hom_to_tau(p: &RelPresentation, n: &Rep) -> Result<usize> {
    let f = n.field();
    let images: Vec<Vec<Scalar>> = hom_basis(&p.d.target, n)?.iter().map(|h| p.d.then(h).flatten()).collect();
    Ok(hom_dim(&p.d.source, n)? - flat_rank(f, &images))
}

/// Independent versions of relative rigidity, `⊥τ_W`, `J` and the sequence enumeration.
pub struct Oracle {
    engine: Arc<Engine>,
    presentations: RwLock<HashMap<(IndSet, IndId), Arc<RelPresentation>>>,
    sequences: RwLock<HashMap<IndSet, Arc<Vec<Vec<IndId>>>>>,
}

impl Oracle {
    pub fn new(engine: Arc<Engine>) -> Oracle {
        Oracle { engine, presentations: RwLock::default(), sequences: RwLock::default() }
    }

    fn catalog(&self) -> &Arc<Catalog> {
        self.engine.catalog()
    }

    /// The wide category with these members, relative projectives from the Ext table.
    pub fn wide(&self, members: IndSet) -> Wide {
        Wide { members, rel_proj: self.engine.ext_proj(members) }
    }

    fn presentation(&self, w: Wide, m: IndId) -> Result<Arc<RelPresentation>> {
        if let Some(p) = self.presentations.read().expect("cache").get(&(w.members, m)) {
            return Ok(p.clone());
        }
        let p = Arc::new(rel_presentation(self.catalog(), w.rel_proj, self.catalog().module(m))?);
        self.presentations.write().expect("cache").insert((w.members, m), p.clone());
        Ok(p)
    }

    pub fn hom_to_tau_w(&self, w: Wide, n: IndId, m: IndId) -> Result<usize> {
        let p = self.presentation(w, m)?;
        rel_hom_to_tau(&p, self.catalog().module(n))
    }

    pub fn is_rigid_w(&self, w: Wide, m: IndSet) -> Result<bool> {
        for a in m.iter() {
            for b in m.iter() {
                if self.hom_to_tau_w(w, a, b)? != 0 {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn perp_tau_w(&self, w: Wide, m: IndSet) -> Result<IndSet> {
        let mut out = IndSet::EMPTY;
        for x in w.members.iter() {
            let mut zero = true;
            for b in m.iter() {
                zero &= self.hom_to_tau_w(w, x, b)? == 0;
            }
            if zero {
                out = out.with(x);
            }
        }
        Ok(out)
    }

    /// `W ∩ M^⊥ ∩ ⊥τ_W M`.
    pub fn j(&self, w: Wide, m: IndSet) -> Result<Wide> {
        let c = self.catalog();
        let perp: IndSet = w.members.iter().filter(|&x| m.iter().all(|a| c.hom(a, x) == 0)).collect();
        Ok(self.wide(perp.intersect(self.perp_tau_w(w, m)?)))
    }

    /// All τ-exceptional sequences of `w` straight from the recursive definition.
    pub fn sequences(&self, w: Wide) -> Result<Arc<Vec<Vec<IndId>>>> {
        if let Some(s) = self.sequences.read().expect("cache").get(&w.members) {
            return Ok(s.clone());
        }
        let mut out = vec![Vec::new()];
        for x in w.members.iter() {
            if !self.is_rigid_w(w, IndSet::single(x))? {
                continue;
            }
            let jx = self.j(w, IndSet::single(x))?;
            for s in self.sequences(jx)?.iter() {
                let mut t = s.clone();
                t.push(x);
                out.push(t);
            }
        }
        out.sort();
        let out = Arc::new(out);
        self.sequences.write().expect("cache").insert(w.members, out.clone());
        Ok(out)
    }

    pub fn complete_sequences(&self) -> Result<Vec<Vec<IndId>>> {
        let whole = self.wide(self.catalog().all());
        let n = self.catalog().rank();
        Ok(self.sequences(whole)?.iter().filter(|s| s.len() == n).cloned().collect())
    }
}

fn subset_limit(catalog: &Catalog, limit: usize) -> Result<()> {
    if catalog.len() > limit {
        return Err(Error::TooManyIndecomposables(catalog.len()));
    }
    Ok(())
}

/// Subsets of indecomposables with `FiltGen(S) = S`.
pub fn torsion_classes(catalog: &Catalog, limit: usize) -> Result<Vec<IndSet>> {
    subset_limit(catalog, limit)?;
    Ok(catalog.all().subsets().filter(|&s| catalog.filtgen(s) == s).collect())
}

/// Indecomposables forced into a wide subcategory containing `x` and `y`: summands of
/// kernels, images and cokernels of basis and generic maps `x → y`, and of middle terms of
/// basis and summed extensions of `x` by `y`.
fn closure_requirements(catalog: &Catalog, x: IndId, y: IndId) -> Result<IndSet> {
    let (mx, my) = (catalog.module(x), catalog.module(y));
    let f = mx.field();
    let mut reps: Vec<Rep> = Vec::new();
    let basis = hom_basis(mx, my)?;
    let mut maps = basis.clone();
    if basis.len() > 1 {
        let generic = basis
            .iter()
            .enumerate()
            .skip(1)
            .fold(basis[0].clone(), |acc, (k, h)| acc.add(&h.scale(&f.from_i64(k as i64 + 1))));
        maps.push(generic);
    }
    for h in &maps {
        reps.push(h.kernel().0);
        reps.push(h.image().0);
        reps.push(h.cokernel().0);
    }
    let ext = ext_space(my, mx)?;
    let mut classes = ext.classes.clone();
    if classes.len() > 1 {
        classes.push(classes.iter().skip(1).fold(classes[0].clone(), |acc, c| acc.add(c)));
    }
    for xi in &classes {
        reps.push(extension_from_cocycle(&ext.syzygy, xi)?.middle);
    }
    let mut out = IndSet::EMPTY;
    for r in reps.iter().filter(|r| !r.is_zero()) {
        for (p, _) in catalog.identify(r)? {
            out = out.with(p);
        }
    }
    Ok(out)
}

/// Subsets closed under the kernels, cokernels and extensions found by
/// [`closure_requirements`] (with the empty subcategory included).
pub fn wide_subcategories(catalog: &Catalog, limit: usize) -> Result<Vec<IndSet>> {
    subset_limit(catalog, limit)?;
    let ids: Vec<IndId> = catalog.ids().collect();
    let mut req = HashMap::new();
    for &x in &ids {
        for &y in &ids {
            req.insert((x, y), closure_requirements(catalog, x, y)?);
        }
    }
    Ok(catalog.all().subsets().filter(|&s| s.iter().all(|x| s.iter().all(|y| req[&(x, y)].is_subset(s)))).collect())
}

/// Indecomposables over a finite field with dimension vector at most `max_dims`, found by
/// running through every representation and sorting out isomorphism classes.
pub fn brute_force_indecomposables(
    alg: &Arc<BoundQuiverAlgebra>,
    max_dims: &[usize],
    max_bits: usize,
) -> Result<Vec<Rep>> {
    let f = alg.field();
    let elements = f.elements().ok_or(Error::InvalidField(0))?;
    let q = alg.quiver();
    let mut found: Vec<Rep> = Vec::new();
    let mut dims = vec![0; max_dims.len()];
    loop {
        let mut v = 0;
        while v < dims.len() && dims[v] == max_dims[v] {
            dims[v] = 0;
            v += 1;
        }
        if v == dims.len() {
            break;
        }
        dims[v] += 1;
        let shapes: Vec<(usize, usize)> = q.arrows.iter().map(|a| (dims[a.target], dims[a.source])).collect();
        let entries: usize = shapes.iter().map(|(r, c)| r * c).sum();
        let states = elements.len().checked_pow(entries as u32).filter(|&s| s <= 1 << max_bits);
        let states = states.ok_or_else(|| Error::Mismatch(format!("dimension vector {dims:?} too large")))?;
        for code in 0..states {
            let mut c = code;
            let mut digit = || {
                let d = c % elements.len();
                c /= elements.len();
                elements[d].clone()
            };
            let arrows: Vec<Mat> = shapes
                .iter()
                .map(|&(r, cols)| {
                    let mut m = Mat::zeros(f, r, cols);
                    for i in 0..r {
                        for j in 0..cols {
                            m.set(i, j, digit());
                        }
                    }
                    m
                })
                .collect();
            let Ok(rep) = Rep::new(alg.clone(), dims.clone(), arrows) else { continue };
            if !is_indecomposable(&rep)? {
                continue;
            }
            let mut new = true;
            for g in found.iter().filter(|g| g.dim_vector() == rep.dim_vector()) {
                if is_isomorphic(g, &rep)? {
                    new = false;
                    break;
                }
            }
            if new {
                found.push(rep);
            }
        }
    }
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::AlgebraDescription;

    fn engine(n: usize, rad2: bool) -> Arc<Engine> {
        let alg = BoundQuiverAlgebra::build(&AlgebraDescription::linear(n, rad2)).unwrap();
        Arc::new(Engine::new(Arc::new(Catalog::build(&alg, None).unwrap())).unwrap())
    }

    #[test]
    fn relative_tau_agrees_with_table_on_the_whole_category() {
        for (n, rad2) in [(2, false), (3, false), (3, true)] {
            let e = engine(n, rad2);
            let o = Oracle::new(e.clone());
            let c = e.catalog();
            let w = e.whole();
            for m in c.ids() {
                for x in c.ids() {
                    assert_eq!(o.hom_to_tau_w(w, x, m).unwrap(), c.hom_to_tau(x, m));
                }
            }
        }
    }

    #[test]
    fn a2_recursive_sequences() {
        let e = engine(2, false);
        let o = Oracle::new(e.clone());
        let (s2, s1, p1) = (IndId(0), IndId(1), IndId(2));
        let mut complete = o.complete_sequences().unwrap();
        complete.sort();
        let mut expected = vec![vec![s1, s2], vec![s2, p1], vec![p1, s1]];
        expected.sort();
        assert_eq!(complete, expected);
    }

    #[test]
    fn brute_force_counts() {
        let e = engine(3, false);
        assert_eq!(torsion_classes(e.catalog(), 16).unwrap().len(), 14);
        let wides = wide_subcategories(e.catalog(), 16).unwrap();
        let mut js: Vec<IndSet> =
            e.support_rigid_objects(e.whole()).into_iter().map(|t| e.j(e.whole(), t).unwrap().members).collect();
        js.sort();
        js.dedup();
        assert_eq!(wides, js);
    }

    #[test]
    fn f2_enumeration_matches_catalog() {
        let desc = AlgebraDescription::linear(3, true).with_characteristic(2);
        let alg = BoundQuiverAlgebra::build(&desc).unwrap();
        let cat = Catalog::build(&alg, None).unwrap();
        let found = brute_force_indecomposables(&alg, &[2, 2, 2], 16).unwrap();
        assert_eq!(found.len(), cat.len());
    }
}
