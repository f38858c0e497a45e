//! The Auslander–Reiten translate, Ext¹, τ-rigidity and enumeration of indecomposables.

use std::collections::HashSet;
use std::sync::Arc;

use crate::decompose::{decompose, indecomposables_isomorphic};
use crate::error::{Error, Result};
use crate::linalg::{Mat, Scalar};
use crate::quiver::BoundQuiverAlgebra;
use crate::rep::{hom_basis, hom_dim, min_presentation, FreeModule, Rep, RepMorphism};

type Triple = (usize, usize, usize);
type Choice = [(usize, usize)];

/// `τM = D Tr M`, computed from a minimal projective presentation.
pub fn tau(m: &Rep) -> Result<Rep> {
    let alg = m.algebra().clone();
    let op = alg.opposite();
    let pres = min_presentation(m);
    let p0 = &pres.p0;
    let p1 = &pres.p1;
    let star0 = FreeModule::new(op.clone(), p0.summands().to_vec());
    let star1 = FreeModule::new(op.clone(), p1.summands().to_vec());
    let target = star1.rep();
    let f = alg.field();
    let mut images: Vec<Vec<Scalar>> = p0.summands().iter().map(|&v| vec![f.zero(); target.dim_vector()[v]]).collect();
    for (i, &u) in p1.summands().iter().enumerate() {
        let gen = p1.generator_position(i);
        let column = pres.differential.maps[u].column(gen);
        for (j, pi, c) in p0.decode(u, &column) {
            let p = &alg.path_basis()[pi];
            let reversed: Vec<usize> = p.arrows.iter().rev().copied().collect();
            let qi = op.path_position(u, &reversed).expect("reversed basis path is a basis path");
            let v = p0.summands()[j];
            let row = star1.position(v, i, qi).expect("dual path lies in the dual projective");
            images[j][row] = f.add(&images[j][row], &c);
        }
    }
    let g_star = star0.morphism_from_generators(&target, &images);
    let (transpose, _) = g_star.cokernel();
    transpose.dualize().rebind(&alg)
}

/// `dim Ext¹(M, N) = hom(ΩM, N) − hom(P₀, N) + hom(M, N)`.
pub fn ext1_dim(m: &Rep, n: &Rep) -> Result<usize> {
    let pres = min_presentation(m);
    let a = hom_dim(&pres.syzygy.source, n)?;
    let b = hom_dim(&pres.cover.source, n)?;
    let c = hom_dim(m, n)?;
    Ok(a + c - b)
}

/// `dim Hom(N, τM)` by the Auslander–Reiten formula, without computing `τM`.
pub fn hom_into_tau_dim(n: &Rep, m: &Rep) -> Result<usize> {
    let pres = min_presentation(m);
    let at = |free: &FreeModule| free.summands().iter().map(|&v| n.dim_vector()[v]).sum::<usize>();
    Ok(at(&pres.p1) + hom_dim(m, n)? - at(&pres.p0))
}

/// Extensions of `M` by `N` as cocycles `ΩM → N` modulo restrictions from `P₀`.
#[derive(Clone, Debug)]
pub struct ExtSpace {
    pub syzygy: RepMorphism,
    pub classes: Vec<RepMorphism>,
}

pub fn ext_space(m: &Rep, n: &Rep) -> Result<ExtSpace> {
    let pres = min_presentation(m);
    let syz = pres.syzygy;
    let cocycles = hom_basis(&syz.source, n)?;
    if cocycles.is_empty() {
        return Ok(ExtSpace { syzygy: syz, classes: Vec::new() });
    }
    let f = m.field();
    let len = cocycles[0].flatten().len();
    let basis = Mat::from_columns(f, len, &cocycles.iter().map(RepMorphism::flatten).collect::<Vec<_>>());
    let restricted: Vec<Vec<Scalar>> = hom_basis(&syz.target, n)?.iter().map(|h| syz.then(h).flatten()).collect();
    let coords = if restricted.is_empty() {
        Mat::zeros(f, cocycles.len(), 0)
    } else {
        basis.solve(&Mat::from_columns(f, len, &restricted)).expect("restrictions are cocycles")
    };
    let keep = coords.complement_basis();
    let classes = (0..keep.cols())
        .map(|j| {
            let idx = (0..keep.rows()).find(|&r| !keep.get(r, j).is_zero()).expect("standard vector");
            cocycles[idx].clone()
        })
        .collect();
    Ok(ExtSpace { syzygy: syz, classes })
}

/// A short exact sequence `0 → N → E → M → 0`, with `M` realised as `P₀ / ΩM`.
#[derive(Clone, Debug)]
pub struct Extension {
    pub middle: Rep,
    pub inclusion: RepMorphism,
    pub projection: RepMorphism,
}

/// The middle term of the extension given by a cocycle `ξ : ΩM → N`:
/// `E = coker(ΩM → P₀ ⊕ N, x ↦ (ιx, −ξx))`.
pub fn extension_from_cocycle(syzygy: &RepMorphism, xi: &RepMorphism) -> Result<Extension> {
    let p0 = &syzygy.target;
    let n = &xi.target;
    let sum = p0.direct_sum(n)?;
    let f = p0.field();
    let minus = f.from_i64(-1);
    let maps = syzygy.maps.iter().zip(&xi.maps).map(|(i, x)| i.vstack(&x.scale(&minus))).collect();
    let d = RepMorphism { source: syzygy.source.clone(), target: sum.clone(), maps };
    let (middle, proj) = d.cokernel();
    let into_sum = RepMorphism {
        source: n.clone(),
        target: sum,
        maps: (0..n.dim_vector().len())
            .map(|v| Mat::zeros(f, p0.dim_vector()[v], n.dim_vector()[v]).vstack(&Mat::identity(f, n.dim_vector()[v])))
            .collect(),
    };
    let inclusion = into_sum.then(&proj);
    let m_cover = syzygy.cokernel().1;
    let sections: Vec<Mat> = proj
        .maps
        .iter()
        .map(|q| q.solve(&Mat::identity(f, q.rows())).expect("cokernel projection is surjective"))
        .collect();
    let to_m: Vec<Mat> = (0..sections.len())
        .map(|v| {
            let dp = p0.dim_vector()[v];
            let top = sections[v].submatrix(0, dp, 0, sections[v].cols());
            m_cover.maps[v].mul(&top)
        })
        .collect();
    let projection = RepMorphism { source: middle.clone(), target: m_cover.target.clone(), maps: to_m };
    Ok(Extension { middle, inclusion, projection })
}

/// The extension `0 → N → E → ⊕M_k → 0` whose restriction to the `k`-th summand has class `ξ_k`,
/// formed as the pushout of `⊕E_k` along the codiagonal `N^m → N`.
pub fn combined_extension(parts: &[(Rep, RepMorphism, RepMorphism)]) -> Result<Rep> {
    let n = &parts[0].2.target;
    let alg = n.algebra().clone();
    let mut middles = Vec::new();
    let mut incls = Vec::new();
    for (_, syz, xi) in parts {
        let e = extension_from_cocycle(syz, xi)?;
        middles.push(e.middle.clone());
        incls.push(e.inclusion);
    }
    if parts.len() == 1 {
        return Ok(middles.remove(0));
    }
    let f = n.field();
    let total = Rep::direct_sum_all(&alg, middles.iter())?;
    let copies = incls.len();
    // Differences n_k − n_{k+1} of the embedded copies of N are identified.
    let mut source = Rep::zero(alg.clone());
    for _ in 0..copies - 1 {
        source = source.direct_sum(n)?;
    }
    let maps = (0..n.dim_vector().len())
        .map(|v| {
            let dn = n.dim_vector()[v];
            let mut m = Mat::zeros(f, total.dim_vector()[v], dn * (copies - 1));
            let mut row = 0;
            let offsets: Vec<usize> = middles
                .iter()
                .map(|e| {
                    let o = row;
                    row += e.dim_vector()[v];
                    o
                })
                .collect();
            for k in 0..copies - 1 {
                m.paste(offsets[k], k * dn, &incls[k].maps[v]);
                m.paste(offsets[k + 1], k * dn, &incls[k + 1].maps[v].scale(&f.from_i64(-1)));
            }
            m
        })
        .collect();
    let d = RepMorphism { source, target: total, maps };
    Ok(d.cokernel().0)
}

pub fn is_tau_rigid(m: &Rep) -> Result<bool> {
    Ok(hom_dim(m, &tau(m)?)? == 0)
}

/// True for a τ-rigid module with `n` pairwise non-isomorphic indecomposable summands.
pub fn is_tau_tilting(m: &Rep) -> Result<bool> {
    Ok(is_tau_rigid(m)? && decompose(m)?.parts.len() == m.algebra().rank())
}

/// The outcome of enumerating indecomposables up to a per-vertex dimension bound.
#[derive(Clone, Debug)]
pub struct Enumeration {
    pub modules: Vec<Rep>,
    pub bound: Vec<usize>,
    pub certificate: Certificate,
}

/// Evidence that the enumeration is complete: the count is stable when the bound grows by one,
/// and no module reaches the bound in any coordinate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub count: usize,
    pub count_at_bound_plus_one: usize,
    pub touches_bound: bool,
}

impl Certificate {
    pub fn is_certified(&self) -> bool {
        self.count == self.count_at_bound_plus_one && !self.touches_bound
    }
}

impl Enumeration {
    pub fn require_certified(&self) -> Result<()> {
        if self.certificate.is_certified() {
            Ok(())
        } else {
            Err(Error::NotCertifiablyComplete(format!(
                "{} indecomposables below {:?}, {} below the enlarged bound{}",
                self.certificate.count,
                self.bound,
                self.certificate.count_at_bound_plus_one,
                if self.certificate.touches_bound { ", some module reaches the bound" } else { "" }
            )))
        }
    }
}

pub fn default_bound(alg: &Arc<BoundQuiverAlgebra>) -> Vec<usize> {
    let mut max = 0;
    for v in 0..alg.rank() {
        let p = Rep::projective(alg, v).expect("vertex in range");
        max = max.max(*p.dim_vector().iter().max().unwrap_or(&0));
    }
    vec![3 * max.max(1); alg.rank()]
}

pub fn enumerate_indecomposables(alg: &Arc<BoundQuiverAlgebra>, bound: Option<Vec<usize>>) -> Result<Enumeration> {
    let bound = bound.unwrap_or_else(|| default_bound(alg));
    if bound.len() != alg.rank() {
        return Err(Error::Parse(format!("dimension bound has {} entries, expected {}", bound.len(), alg.rank())));
    }
    for v in 0..alg.rank() {
        let p = Rep::projective(alg, v)?;
        if p.dim_vector().iter().zip(&bound).any(|(d, b)| d > b) {
            return Err(Error::BoundTooSmall { bound, projective: p.dim_vector().to_vec() });
        }
    }
    let modules = enumerate_below(alg, &bound)?;
    let larger: Vec<usize> = bound.iter().map(|b| b + 1).collect();
    let count_at_bound_plus_one = enumerate_below(alg, &larger)?.len();
    let touches_bound = modules.iter().any(|m| m.dim_vector().iter().zip(&bound).any(|(d, b)| d >= b));
    let certificate = Certificate { count: modules.len(), count_at_bound_plus_one, touches_bound };
    Ok(Enumeration { modules, bound, certificate })
}

fn fits(d: &[usize], bound: &[usize]) -> bool {
    d.iter().zip(bound).all(|(a, b)| a <= b)
}

/// Fixpoint of "add the summands of every extension `0 → S → E → ⊕N_i → 0`".
fn enumerate_below(alg: &Arc<BoundQuiverAlgebra>, bound: &[usize]) -> Result<Vec<Rep>> {
    let n = alg.rank();
    let simples: Vec<Rep> = (0..n).map(|v| Rep::simple(alg, v)).collect::<Result<_>>()?;
    let mut known: Vec<Rep> = simples.iter().filter(|s| fits(s.dim_vector(), bound)).cloned().collect();
    let mut ext_cache: Vec<Vec<Option<ExtSpace>>> = vec![Vec::new(); n];
    let mut done: HashSet<(usize, Vec<Triple>)> = HashSet::new();
    loop {
        let before = known.len();
        for s in 0..n {
            while ext_cache[s].len() < known.len() {
                let i = ext_cache[s].len();
                let space = ext_space(&known[i], &simples[s])?;
                ext_cache[s].push((!space.classes.is_empty()).then_some(space));
            }
            let snapshot = known.len();
            let mut room = bound.to_vec();
            if room[s] == 0 {
                continue;
            }
            room[s] -= 1;
            let mut choice = Vec::new();
            let mut found = Vec::new();
            multisets(&known[..snapshot], &ext_cache[s], 0, &mut room, &mut choice, &mut |picked| {
                found.push(picked.to_vec());
            });
            for picked in found {
                for classes in class_choices(&picked, &ext_cache[s]) {
                    let key = (s, classes.clone());
                    if !done.insert(key) {
                        continue;
                    }
                    let parts: Vec<(Rep, RepMorphism, RepMorphism)> = classes
                        .iter()
                        .map(|&(i, _, c)| {
                            let space = ext_cache[s][i].as_ref().expect("nonzero ext");
                            (known[i].clone(), space.syzygy.clone(), class_cocycle(space, c))
                        })
                        .collect();
                    let e = combined_extension(&parts)?;
                    for part in decompose(&e)?.parts {
                        let r = part.0;
                        if !fits(r.dim_vector(), bound) {
                            continue;
                        }
                        let mut new = true;
                        for k in &known {
                            if indecomposables_isomorphic(k, &r)? {
                                new = false;
                                break;
                            }
                        }
                        if new {
                            known.push(r);
                        }
                    }
                }
            }
        }
        if known.len() == before {
            break;
        }
    }
    let mut order: Vec<usize> = (0..known.len()).collect();
    order.sort_by(|&a, &b| {
        let (x, y) = (&known[a], &known[b]);
        (x.dim(), x.dim_vector(), a).cmp(&(y.dim(), y.dim_vector(), b))
    });
    Ok(order.into_iter().map(|i| known[i].clone()).collect())
}

/// Multisets of known modules with multiplicity at most `dim Ext¹(N_i, S)` fitting in `room`.
fn multisets(
    known: &[Rep],
    ext: &[Option<ExtSpace>],
    start: usize,
    room: &mut Vec<usize>,
    choice: &mut Vec<(usize, usize)>,
    emit: &mut dyn FnMut(&Choice),
) {
    if !choice.is_empty() {
        emit(choice);
    }
    for i in start..known.len() {
        let Some(space) = &ext[i] else { continue };
        let d = known[i].dim_vector();
        let mut taken = 0;
        while taken < space.classes.len() && fits(d, room) {
            for (r, x) in room.iter_mut().zip(d) {
                *r -= x;
            }
            taken += 1;
            choice.push((i, taken));
            multisets(known, ext, i + 1, room, choice, emit);
            choice.pop();
        }
        for (r, x) in room.iter_mut().zip(d) {
            *r += x * taken;
        }
    }
}

/// Class choices: the `k`-th copy of `N_i` uses basis class `c`, or the sum of all classes
/// when `c` equals the number of classes.
fn class_choices(picked: &[(usize, usize)], ext: &[Option<ExtSpace>]) -> Vec<Vec<(usize, usize, usize)>> {
    let mut per_module: Vec<Vec<Vec<usize>>> = Vec::new();
    for &(i, m) in picked {
        let e = ext[i].as_ref().expect("nonzero ext").classes.len();
        let mut options = subsets(e, m);
        if m == 1 && e > 1 {
            options.push(vec![e]);
        }
        per_module.push(options);
    }
    let mut out = vec![Vec::new()];
    for (k, options) in per_module.iter().enumerate() {
        let i = picked[k].0;
        let mut next = Vec::new();
        for prefix in &out {
            for opt in options {
                let mut p: Vec<(usize, usize, usize)> = prefix.clone();
                p.extend(opt.iter().enumerate().map(|(copy, &c)| (i, copy, c)));
                next.push(p);
            }
        }
        out = next;
    }
    out
}

fn subsets(e: usize, m: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, e: usize, m: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        for c in start..e {
            cur.push(c);
            go(c + 1, e, m, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, e, m, &mut Vec::new(), &mut out);
    out
}

fn class_cocycle(space: &ExtSpace, c: usize) -> RepMorphism {
    if c < space.classes.len() {
        space.classes[c].clone()
    } else {
        space.classes[1..].iter().fold(space.classes[0].clone(), |acc, x| acc.add(x))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decompose::is_isomorphic;
    use crate::quiver::AlgebraDescription;

    fn alg(n: usize, rad2: bool) -> Arc<BoundQuiverAlgebra> {
        BoundQuiverAlgebra::build(&AlgebraDescription::linear(n, rad2)).unwrap()
    }

    #[test]
    fn tau_on_a2() {
        let a = alg(2, false);
        let s1 = Rep::simple(&a, 0).unwrap();
        let s2 = Rep::simple(&a, 1).unwrap();
        let p1 = Rep::projective(&a, 0).unwrap();
        assert!(is_isomorphic(&tau(&s1).unwrap(), &s2).unwrap());
        assert!(tau(&p1).unwrap().is_zero());
        assert!(tau(&s2).unwrap().is_zero());
    }

    #[test]
    fn ext_on_a2() {
        let a = alg(2, false);
        let s1 = Rep::simple(&a, 0).unwrap();
        let s2 = Rep::simple(&a, 1).unwrap();
        let p1 = Rep::projective(&a, 0).unwrap();
        assert_eq!(ext1_dim(&s1, &s2).unwrap(), 1);
        assert_eq!(ext1_dim(&p1, &s2).unwrap(), 0);
        assert_eq!(ext1_dim(&p1, &s1).unwrap(), 0);
        assert_eq!(ext1_dim(&s1, &p1).unwrap(), 0);
        assert_eq!(ext1_dim(&s2, &s1).unwrap(), 0);
    }

    #[test]
    fn nonsplit_extension_of_simples_is_the_projective() {
        let a = alg(2, false);
        let s1 = Rep::simple(&a, 0).unwrap();
        let s2 = Rep::simple(&a, 1).unwrap();
        let space = ext_space(&s1, &s2).unwrap();
        assert_eq!(space.classes.len(), 1);
        let e = extension_from_cocycle(&space.syzygy, &space.classes[0]).unwrap();
        assert!(is_isomorphic(&e.middle, &Rep::projective(&a, 0).unwrap()).unwrap());
        assert!(e.inclusion.is_valid() && e.projection.is_valid());
        assert!(e.inclusion.then(&e.projection).is_zero());
        assert_eq!(e.inclusion.rank(), 1);
        assert_eq!(e.projection.rank(), 1);
    }

    #[test]
    fn tau_rigidity_on_a2() {
        let a = alg(2, false);
        let s1 = Rep::simple(&a, 0).unwrap();
        let s2 = Rep::simple(&a, 1).unwrap();
        let p1 = Rep::projective(&a, 0).unwrap();
        let t = s1.direct_sum(&p1).unwrap();
        assert!(is_tau_rigid(&t).unwrap());
        assert!(is_tau_tilting(&t).unwrap());
        assert!(is_tau_rigid(&p1).unwrap());
        assert!(!is_tau_rigid(&s1.direct_sum(&s2).unwrap()).unwrap());
    }

    #[test]
    fn enumeration_counts() {
        for (n, rad2, count) in [(2, false, 3), (3, false, 6), (3, true, 5)] {
            let a = alg(n, rad2);
            let e = enumerate_indecomposables(&a, None).unwrap();
            assert_eq!(e.modules.len(), count, "A{n} rad2={rad2}");
            assert!(e.certificate.is_certified());
        }
    }

    #[test]
    fn enumeration_order_on_a2() {
        let a = alg(2, false);
        let e = enumerate_indecomposables(&a, None).unwrap();
        let dims: Vec<&[usize]> = e.modules.iter().map(|m| m.dim_vector()).collect();
        assert_eq!(dims, vec![&[0, 1][..], &[1, 0], &[1, 1]]);
    }

    #[test]
    fn bound_below_projective_is_rejected() {
        let a = alg(2, false);
        assert!(matches!(enumerate_indecomposables(&a, Some(vec![1, 0])), Err(Error::BoundTooSmall { .. })));
    }

    #[test]
    fn ar_formula_agrees_with_tau() {
        for (n, rad2) in [(3, false), (3, true)] {
            let a = alg(n, rad2);
            let mods = enumerate_indecomposables(&a, None).unwrap().modules;
            for m in &mods {
                let t = tau(m).unwrap();
                for x in &mods {
                    assert_eq!(hom_dim(x, &t).unwrap(), hom_into_tau_dim(x, m).unwrap());
                }
            }
        }
    }
}
