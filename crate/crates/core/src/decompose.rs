//! Krull–Schmidt decomposition via Fitting splits in the endomorphism ring, and isomorphism tests.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg::{Mat, Scalar};
use crate::rep::{hom_basis, Rep, RepMorphism};

/// Indecomposable summands up to isomorphism, with multiplicities.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub parts: Vec<(Rep, usize)>,
}

impl Decomposition {
    /// Number of indecomposable summands counted with multiplicity.
    pub fn delta(&self) -> usize {
        self.parts.iter().map(|(_, k)| k).sum()
    }

    /// Every summand, repeated according to multiplicity.
    pub fn summands(&self) -> Vec<&Rep> {
        self.parts.iter().flat_map(|(r, k)| std::iter::repeat_n(r, *k)).collect()
    }
}

const EXHAUSTIVE_LIMIT: u64 = 1 << 12;
const ROOT_SEARCH_LIMIT: u64 = 1 << 16;

pub fn decompose(m: &Rep) -> Result<Decomposition> {
    let mut pieces = Vec::new();
    split_fully(m, &mut pieces)?;
    let mut parts: Vec<(Rep, usize)> = Vec::new();
    'next: for p in pieces {
        for (q, k) in parts.iter_mut() {
            if indecomposables_isomorphic(q, &p)? {
                *k += 1;
                continue 'next;
            }
        }
        parts.push((p, 1));
    }
    Ok(Decomposition { parts })
}

/// True iff `m` is nonzero with local endomorphism ring.
pub fn is_indecomposable(m: &Rep) -> Result<bool> {
    if m.is_zero() {
        return Ok(false);
    }
    Ok(find_split(m)?.is_none())
}

fn split_fully(m: &Rep, out: &mut Vec<Rep>) -> Result<()> {
    if m.is_zero() {
        return Ok(());
    }
    match find_split(m)? {
        None => out.push(m.clone()),
        Some((a, b)) => {
            split_fully(&a, out)?;
            split_fully(&b, out)?;
        }
    }
    Ok(())
}

/// `M = ker x^N ⊕ im x^N` when that is a proper splitting.
fn fitting_split(m: &Rep, x: &RepMorphism) -> Option<(Rep, Rep)> {
    let n = m.dim();
    let maps: Vec<Mat> = x.maps.iter().map(|a| a.pow(n)).collect();
    let y = RepMorphism { source: m.clone(), target: m.clone(), maps };
    let r = y.rank();
    if r == 0 || r == n {
        return None;
    }
    Some((y.kernel().0, y.image().0))
}

fn shifted(x: &RepMorphism, lambda: &Scalar) -> RepMorphism {
    let f = x.source.field();
    let id = RepMorphism::identity(&x.source);
    x.add(&id.scale(&f.neg(lambda)))
}

fn find_split(m: &Rep) -> Result<Option<(Rep, Rep)>> {
    let basis = hom_basis(m, m)?;
    if basis.len() <= 1 {
        return Ok(None);
    }
    let f = m.field();
    if f.characteristic() == 0 && trace_form_rank(&basis) == 1 {
        return Ok(None);
    }
    let size = (f.characteristic() as u128).checked_pow(basis.len() as u32);
    if let Some(size) = size.filter(|&s| f.characteristic() != 0 && s <= EXHAUSTIVE_LIMIT as u128) {
        return Ok(exhaustive_split(m, &basis, size as u64));
    }
    for x in candidates(&basis) {
        for lambda in rational_roots(&x) {
            if let Some(s) = fitting_split(m, &shifted(&x, &lambda)) {
                return Ok(Some(s));
            }
        }
    }
    if f.characteristic() == 0 {
        Err(Error::IdempotentSplitFailure(m.dim_vector().to_vec()))
    } else {
        Ok(None)
    }
}

/// Rank of the Gram matrix of `(a, b) ↦ tr(ab)`; in characteristic 0 this is `dim End/rad End`.
fn trace_form_rank(basis: &[RepMorphism]) -> usize {
    let f = basis[0].source.field();
    let d = basis.len();
    let mut g = Mat::zeros(f, d, d);
    for i in 0..d {
        for j in i..d {
            let t = basis[j].then(&basis[i]).trace();
            g.set(i, j, t.clone());
            g.set(j, i, t);
        }
    }
    g.rank()
}

fn exhaustive_split(m: &Rep, basis: &[RepMorphism], size: u64) -> Option<(Rep, Rep)> {
    let f = m.field();
    let p = f.characteristic();
    for code in 1..size {
        let mut c = code;
        let mut x = RepMorphism::zero(m, m);
        for b in basis {
            let coef = c % p;
            c /= p;
            if coef != 0 {
                x = x.add(&b.scale(&Scalar::Mod(coef)));
            }
        }
        if let Some(s) = fitting_split(m, &x) {
            return Some(s);
        }
    }
    None
}

fn candidates(basis: &[RepMorphism]) -> Vec<RepMorphism> {
    let f = basis[0].source.field();
    let mut out: Vec<RepMorphism> = basis.to_vec();
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            out.push(basis[i].add(&basis[j]));
            out.push(basis[i].add(&basis[j].scale(&f.from_i64(-1))));
        }
    }
    for a in basis {
        for b in basis {
            out.push(a.then(b));
        }
    }
    let generic =
        basis.iter().enumerate().fold(RepMorphism::zero(&basis[0].source, &basis[0].source), |acc, (i, b)| {
            acc.add(&b.scale(&f.from_i64(2 * i as i64 + 1)))
        });
    out.push(generic);
    out
}

/// Coefficients (constant first) of the minimal polynomial of an endomorphism.
fn minimal_polynomial(x: &RepMorphism) -> Vec<Scalar> {
    let f = x.source.field();
    let len = x.flatten().len();
    let mut powers: Vec<Vec<Scalar>> = Vec::new();
    let mut current = RepMorphism::identity(&x.source);
    loop {
        let v = current.flatten();
        if !powers.is_empty() {
            let basis = Mat::from_columns(f, len, &powers);
            let rhs = Mat::from_columns(f, len, std::slice::from_ref(&v));
            if let Some(sol) = basis.solve(&rhs) {
                let mut coeffs: Vec<Scalar> = (0..powers.len()).map(|i| f.neg(sol.get(i, 0))).collect();
                coeffs.push(f.one());
                return coeffs;
            }
        }
        powers.push(v);
        current = current.then(x);
    }
}

fn eval(coeffs: &[Scalar], t: &Scalar, f: crate::linalg::FieldSpec) -> Scalar {
    coeffs.iter().rev().fold(f.zero(), |acc, c| f.add(&f.mul(&acc, t), c))
}

/// Roots of the minimal polynomial in the ground field, as far as they can be found cheaply.
fn rational_roots(x: &RepMorphism) -> Vec<Scalar> {
    let f = x.source.field();
    let coeffs = minimal_polynomial(x);
    if f.characteristic() != 0 {
        let p = f.characteristic();
        let range = if p <= ROOT_SEARCH_LIMIT { 0..p } else { 0..2.min(p) };
        return range.map(Scalar::Mod).filter(|t| eval(&coeffs, t, f).is_zero()).collect();
    }
    let rats: Vec<BigRational> = coeffs
        .iter()
        .map(|c| match c {
            Scalar::Rat(q) => q.clone(),
            Scalar::Mod(_) => unreachable!(),
        })
        .collect();
    let lcm = rats.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let ints: Vec<BigInt> = rats.iter().map(|q| (q * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    let mut roots = Vec::new();
    let start = ints.iter().position(|c| !c.is_zero()).unwrap_or(0);
    if start > 0 {
        roots.push(f.zero());
    }
    let (Some(c0), Some(cd)) = (ints[start].abs().to_u64(), ints.last().and_then(|c| c.abs().to_u64())) else {
        return roots;
    };
    let (Some(ps), Some(qs)) = (divisors(c0), divisors(cd)) else {
        return roots;
    };
    let mut seen = std::collections::BTreeSet::new();
    for &p in &ps {
        for &q in &qs {
            for sign in [1i64, -1] {
                let r = BigRational::new(BigInt::from(p) * sign, BigInt::from(q));
                if seen.insert(r.clone()) && eval(&coeffs, &Scalar::Rat(r.clone()), f).is_zero() {
                    roots.push(Scalar::Rat(r));
                }
            }
        }
    }
    roots
}

fn divisors(n: u64) -> Option<Vec<u64>> {
    if n == 0 || n > 1_000_000_000_000 {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            if d != n / d {
                out.push(n / d);
            }
        }
        d += 1;
    }
    out.sort_unstable();
    Some(out)
}

/// Isomorphism of two indecomposables: some composite `M → N → M` of Hom basis elements is not nilpotent.
pub fn indecomposables_isomorphic(m: &Rep, n: &Rep) -> Result<bool> {
    if m.dim_vector() != n.dim_vector() {
        return Ok(false);
    }
    let fs = hom_basis(m, n)?;
    if fs.is_empty() {
        return Ok(false);
    }
    let gs = hom_basis(n, m)?;
    Ok(fs.iter().any(|f| gs.iter().any(|g| !f.then(g).is_nilpotent())))
}

/// Isomorphism of arbitrary modules, by comparing Krull–Schmidt decompositions.
pub fn is_isomorphic(m: &Rep, n: &Rep) -> Result<bool> {
    if m.dim_vector() != n.dim_vector() {
        return Ok(false);
    }
    let dm = decompose(m)?;
    let dn = decompose(n)?;
    if dm.parts.len() != dn.parts.len() {
        return Ok(false);
    }
    let mut used = vec![false; dn.parts.len()];
    for (a, k) in &dm.parts {
        let mut found = false;
        for (j, (b, l)) in dn.parts.iter().enumerate() {
            if !used[j] && k == l && indecomposables_isomorphic(a, b)? {
                used[j] = true;
                found = true;
                break;
            }
        }
        if !found {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::FieldSpec;
    use crate::quiver::{AlgebraDescription, BoundQuiverAlgebra};
    use std::sync::Arc;

    fn a2() -> Arc<BoundQuiverAlgebra> {
        BoundQuiverAlgebra::build(&AlgebraDescription::linear(2, false)).unwrap()
    }

    fn dims(d: &Decomposition) -> Vec<Vec<usize>> {
        let mut v: Vec<Vec<usize>> = d.summands().iter().map(|r| r.dim_vector().to_vec()).collect();
        v.sort();
        v
    }

    #[test]
    fn projective_plus_simple_has_two_parts() {
        let alg = a2();
        let m = Rep::projective(&alg, 0).unwrap().direct_sum(&Rep::simple(&alg, 1).unwrap()).unwrap();
        let d = decompose(&m).unwrap();
        assert_eq!(d.delta(), 2);
        assert_eq!(dims(&d), vec![vec![0, 1], vec![1, 1]]);
    }

    #[test]
    fn sincere_a2_module_is_indecomposable() {
        let alg = a2();
        let f = FieldSpec::RATIONALS;
        let m = Rep::new(alg, vec![1, 1], vec![Mat::from_i64_rows(f, &[vec![3]])]).unwrap();
        assert!(is_indecomposable(&m).unwrap());
        assert_eq!(decompose(&m).unwrap().delta(), 1);
    }

    #[test]
    fn zero_arrow_splits_into_simples() {
        let alg = a2();
        let f = FieldSpec::RATIONALS;
        let m = Rep::new(alg, vec![1, 1], vec![Mat::zeros(f, 1, 1)]).unwrap();
        let d = decompose(&m).unwrap();
        assert_eq!(d.delta(), 2);
        assert_eq!(dims(&d), vec![vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn multiplicities_are_grouped() {
        let alg = a2();
        let f = FieldSpec::RATIONALS;
        let m = Rep::new(alg, vec![2, 2], vec![Mat::from_i64_rows(f, &[vec![1, 1], vec![1, 2]])]).unwrap();
        let d = decompose(&m).unwrap();
        assert_eq!(d.parts.len(), 1);
        assert_eq!(d.delta(), 2);
        assert_eq!(d.parts[0].0.dim_vector(), &[1, 1]);
    }

    #[test]
    fn works_over_a_prime_field() {
        let desc = AlgebraDescription::linear(2, false).with_characteristic(3);
        let alg = BoundQuiverAlgebra::build(&desc).unwrap();
        let f = alg.field();
        let m = Rep::new(alg, vec![2, 1], vec![Mat::from_i64_rows(f, &[vec![1, 2]])]).unwrap();
        assert_eq!(dims(&decompose(&m).unwrap()), vec![vec![1, 0], vec![1, 1]]);
    }

    #[test]
    fn isomorphism_of_simples_and_projectives() {
        let alg = a2();
        let s1 = Rep::simple(&alg, 0).unwrap();
        let p1 = Rep::projective(&alg, 0).unwrap();
        let s2 = Rep::simple(&alg, 1).unwrap();
        assert!(indecomposables_isomorphic(&p1, &p1).unwrap());
        assert!(!indecomposables_isomorphic(&s1, &s2).unwrap());
        let a = p1.direct_sum(&s2).unwrap();
        let b = s2.direct_sum(&p1).unwrap();
        assert!(is_isomorphic(&a, &b).unwrap());
        assert!(!is_isomorphic(&a, &s1.direct_sum(&s2).unwrap().direct_sum(&s2).unwrap()).unwrap());
    }
}
