//! Finite-dimensional representations of a bound quiver and their morphisms.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::{FieldSpec, Mat, Scalar};
use crate::quiver::{BoundQuiverAlgebra, Path};

/// A left module: one vector space per vertex, one matrix (`target × source`) per arrow.
#[derive(Clone, Debug)]
pub struct Rep {
    algebra: Arc<BoundQuiverAlgebra>,
    dims: Vec<usize>,
    arrows: Vec<Mat>,
}

impl PartialEq for Rep {
    fn eq(&self, other: &Self) -> bool {
        same_algebra(&self.algebra, &other.algebra) && self.dims == other.dims && self.arrows == other.arrows
    }
}

pub(crate) fn same_algebra(a: &Arc<BoundQuiverAlgebra>, b: &Arc<BoundQuiverAlgebra>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl Rep {
    pub fn new(algebra: Arc<BoundQuiverAlgebra>, dims: Vec<usize>, arrows: Vec<Mat>) -> Result<Rep> {
        let q = algebra.quiver();
        if dims.len() != q.vertices.len() || arrows.len() != q.arrows.len() {
            return Err(Error::InvalidRep("wrong number of vertex spaces or arrow maps".into()));
        }
        for (a, m) in q.arrows.iter().zip(&arrows) {
            if m.rows() != dims[a.target] || m.cols() != dims[a.source] {
                return Err(Error::InvalidRep(format!("arrow `{}` has the wrong shape", a.name)));
            }
            if m.field() != algebra.field() {
                return Err(Error::InvalidRep("matrix over the wrong field".into()));
            }
        }
        let rep = Rep { algebra, dims, arrows };
        for rel in rep.algebra.relations() {
            if !rep.action_of_arrows(rel).is_zero() {
                return Err(Error::InvalidRep("a relation does not act as zero".into()));
            }
        }
        Ok(rep)
    }

    pub fn zero(algebra: Arc<BoundQuiverAlgebra>) -> Rep {
        let f = algebra.field();
        let n = algebra.rank();
        let arrows = algebra.quiver().arrows.iter().map(|_| Mat::zeros(f, 0, 0)).collect();
        Rep { algebra, dims: vec![0; n], arrows }
    }

    pub fn simple(algebra: &Arc<BoundQuiverAlgebra>, v: usize) -> Result<Rep> {
        if v >= algebra.rank() {
            return Err(Error::UnknownVertex(v.to_string()));
        }
        let f = algebra.field();
        let mut dims = vec![0; algebra.rank()];
        dims[v] = 1;
        let arrows = algebra.quiver().arrows.iter().map(|a| Mat::zeros(f, dims[a.target], dims[a.source])).collect();
        Ok(Rep { algebra: algebra.clone(), dims, arrows })
    }

    /// The indecomposable projective at `v`: basis paths starting at `v`, arrows acting by extension.
    pub fn projective(algebra: &Arc<BoundQuiverAlgebra>, v: usize) -> Result<Rep> {
        if v >= algebra.rank() {
            return Err(Error::UnknownVertex(v.to_string()));
        }
        Ok(FreeModule::new(algebra.clone(), vec![v]).rep())
    }

    pub fn algebra(&self) -> &Arc<BoundQuiverAlgebra> {
        &self.algebra
    }

    pub fn field(&self) -> FieldSpec {
        self.algebra.field()
    }

    pub fn dim_vector(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn arrow_map(&self, a: usize) -> &Mat {
        &self.arrows[a]
    }

    pub fn arrow_maps(&self) -> &[Mat] {
        &self.arrows
    }

    /// The matrix by which a sequence of composable arrows acts (first arrow applied first).
    pub fn action_of_arrows(&self, arrows: &[usize]) -> Mat {
        let q = self.algebra.quiver();
        let f = self.field();
        let Some(&first) = arrows.first() else {
            panic!("empty arrow list has no well-defined source");
        };
        let mut m = Mat::identity(f, self.dims[q.arrows[first].source]);
        for &a in arrows {
            m = self.arrows[a].mul(&m);
        }
        m
    }

    pub fn action(&self, p: &Path) -> Mat {
        if p.is_trivial() {
            Mat::identity(self.field(), self.dims[p.source])
        } else {
            self.action_of_arrows(&p.arrows)
        }
    }

    /// Reattach this module to a structurally equal algebra handle.
    pub fn rebind(self, algebra: &Arc<BoundQuiverAlgebra>) -> Result<Rep> {
        if !same_algebra(&self.algebra, algebra) {
            return Err(Error::AlgebraMismatch);
        }
        Ok(Rep { algebra: algebra.clone(), ..self })
    }

    pub fn direct_sum(&self, other: &Rep) -> Result<Rep> {
        if !same_algebra(&self.algebra, &other.algebra) {
            return Err(Error::AlgebraMismatch);
        }
        let dims = self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect();
        let arrows = self.arrows.iter().zip(&other.arrows).map(|(a, b)| a.block_diag(b)).collect();
        Ok(Rep { algebra: self.algebra.clone(), dims, arrows })
    }

    pub fn direct_sum_all<'a>(
        algebra: &Arc<BoundQuiverAlgebra>,
        parts: impl IntoIterator<Item = &'a Rep>,
    ) -> Result<Rep> {
        parts.into_iter().try_fold(Rep::zero(algebra.clone()), |acc, r| acc.direct_sum(r))
    }

    /// The submodule spanned at each vertex by the columns of `bases[v]` (which must be
    /// independent and closed under the arrows), with its inclusion.
    pub fn submodule(&self, bases: Vec<Mat>) -> (Rep, RepMorphism) {
        let q = self.algebra.quiver();
        let dims: Vec<usize> = bases.iter().map(Mat::cols).collect();
        let arrows = q
            .arrows
            .iter()
            .enumerate()
            .map(|(ai, a)| {
                let image = self.arrows[ai].mul(&bases[a.source]);
                bases[a.target].solve(&image).expect("subspaces are not closed under the arrows")
            })
            .collect();
        let sub = Rep { algebra: self.algebra.clone(), dims, arrows };
        let incl = RepMorphism { source: sub.clone(), target: self.clone(), maps: bases };
        (sub, incl)
    }

    /// Dual module over the opposite algebra: transposed arrow matrices.
    pub fn dualize(&self) -> Rep {
        let op = self.algebra.opposite();
        Rep { algebra: op, dims: self.dims.clone(), arrows: self.arrows.iter().map(Mat::transpose).collect() }
    }

    /// `rad M`: the sum of the images of all arrows, as a subspace per vertex.
    pub fn radical_bases(&self) -> Vec<Mat> {
        let q = self.algebra.quiver();
        let f = self.field();
        (0..self.dims.len())
            .map(|v| {
                let mut span = Mat::zeros(f, self.dims[v], 0);
                for (ai, a) in q.arrows.iter().enumerate() {
                    if a.target == v {
                        span = span.hstack(&self.arrows[ai]);
                    }
                }
                span.image_basis()
            })
            .collect()
    }

    /// Dimension vector of `top M = M / rad M`.
    pub fn top_dims(&self) -> Vec<usize> {
        self.radical_bases().iter().zip(&self.dims).map(|(r, d)| d - r.cols()).collect()
    }
}

/// A module homomorphism given by one matrix per vertex.
#[derive(Clone, Debug, PartialEq)]
pub struct RepMorphism {
    pub source: Rep,
    pub target: Rep,
    pub maps: Vec<Mat>,
}

impl RepMorphism {
    pub fn new(source: Rep, target: Rep, maps: Vec<Mat>) -> Result<RepMorphism> {
        let f = RepMorphism { source, target, maps };
        if !f.is_valid() {
            return Err(Error::InvalidRep("vertex maps do not commute with the arrows".into()));
        }
        Ok(f)
    }

    pub fn zero(source: &Rep, target: &Rep) -> RepMorphism {
        let f = source.field();
        let maps = (0..source.dims.len()).map(|v| Mat::zeros(f, target.dims[v], source.dims[v])).collect();
        RepMorphism { source: source.clone(), target: target.clone(), maps }
    }

    pub fn identity(m: &Rep) -> RepMorphism {
        let f = m.field();
        RepMorphism {
            source: m.clone(),
            target: m.clone(),
            maps: m.dims.iter().map(|&d| Mat::identity(f, d)).collect(),
        }
    }

    pub fn is_valid(&self) -> bool {
        let q = self.source.algebra.quiver();
        if self.maps.len() != self.source.dims.len() {
            return false;
        }
        for v in 0..self.maps.len() {
            if self.maps[v].rows() != self.target.dims[v] || self.maps[v].cols() != self.source.dims[v] {
                return false;
            }
        }
        q.arrows.iter().enumerate().all(|(ai, a)| {
            self.target.arrows[ai].mul(&self.maps[a.source]) == self.maps[a.target].mul(&self.source.arrows[ai])
        })
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &RepMorphism) -> RepMorphism {
        let maps = self.maps.iter().zip(&other.maps).map(|(a, b)| b.mul(a)).collect();
        RepMorphism { source: self.source.clone(), target: other.target.clone(), maps }
    }

    pub fn add(&self, other: &RepMorphism) -> RepMorphism {
        let maps = self.maps.iter().zip(&other.maps).map(|(a, b)| a.add(b)).collect();
        RepMorphism { source: self.source.clone(), target: self.target.clone(), maps }
    }

    pub fn scale(&self, c: &Scalar) -> RepMorphism {
        RepMorphism {
            source: self.source.clone(),
            target: self.target.clone(),
            maps: self.maps.iter().map(|m| m.scale(c)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.maps.iter().all(Mat::is_zero)
    }

    pub fn is_iso(&self) -> bool {
        self.maps.iter().all(Mat::is_invertible)
    }

    pub fn rank(&self) -> usize {
        self.maps.iter().map(Mat::rank).sum()
    }

    pub fn is_nilpotent(&self) -> bool {
        let n = self.source.dim();
        self.maps.iter().all(|m| m.pow(n.max(1)).is_zero())
    }

    /// All vertex matrices flattened into one coordinate vector.
    pub fn flatten(&self) -> Vec<Scalar> {
        self.maps.iter().flat_map(|m| m.entries().iter().cloned()).collect()
    }

    /// Sum of the vertex traces of an endomorphism.
    pub fn trace(&self) -> Scalar {
        let f = self.source.field();
        self.maps.iter().fold(f.zero(), |acc, m| f.add(&acc, &m.trace()))
    }

    pub fn kernel(&self) -> (Rep, RepMorphism) {
        self.source.submodule(self.maps.iter().map(Mat::kernel).collect())
    }

    pub fn image(&self) -> (Rep, RepMorphism) {
        self.target.submodule(self.maps.iter().map(Mat::image_basis).collect())
    }

    pub fn cokernel(&self) -> (Rep, RepMorphism) {
        let t = &self.target;
        let q = t.algebra.quiver();
        let projs: Vec<Mat> = self.maps.iter().map(Mat::cokernel_projection).collect();
        let sections: Vec<Mat> = projs
            .iter()
            .map(|p| p.solve(&Mat::identity(t.field(), p.rows())).expect("cokernel projection is surjective"))
            .collect();
        let dims: Vec<usize> = projs.iter().map(Mat::rows).collect();
        let arrows = q
            .arrows
            .iter()
            .enumerate()
            .map(|(ai, a)| projs[a.target].mul(&t.arrows[ai]).mul(&sections[a.source]))
            .collect();
        let coker = Rep { algebra: t.algebra.clone(), dims, arrows };
        let proj = RepMorphism { source: t.clone(), target: coker.clone(), maps: projs };
        (coker, proj)
    }
}

fn vertex_offsets(m: &Rep, n: &Rep) -> (Vec<usize>, usize) {
    let mut offsets = Vec::with_capacity(m.dims.len());
    let mut total = 0;
    for v in 0..m.dims.len() {
        offsets.push(total);
        total += n.dims[v] * m.dims[v];
    }
    (offsets, total)
}

/// A basis of `Hom(M, N)`: the null space of the commuting-square equations.
pub fn hom_basis(m: &Rep, n: &Rep) -> Result<Vec<RepMorphism>> {
    if !same_algebra(&m.algebra, &n.algebra) {
        return Err(Error::AlgebraMismatch);
    }
    let f = m.field();
    let q = m.algebra.quiver();
    let (offsets, unknowns) = vertex_offsets(m, n);
    if unknowns == 0 {
        return Ok(Vec::new());
    }
    let eq_count: usize = q.arrows.iter().map(|a| n.dims[a.target] * m.dims[a.source]).sum();
    let mut sys = Mat::zeros(f, eq_count, unknowns);
    let mut row = 0;
    for (ai, a) in q.arrows.iter().enumerate() {
        let (s, t) = (a.source, a.target);
        let na = &n.arrows[ai];
        let ma = &m.arrows[ai];
        // N(a) f_s - f_t M(a) = 0, entry (r, c)
        for r in 0..n.dims[t] {
            for c in 0..m.dims[s] {
                for k in 0..n.dims[s] {
                    let coef = na.get(r, k);
                    if !coef.is_zero() {
                        let col = offsets[s] + k * m.dims[s] + c;
                        let v = f.add(sys.get(row, col), coef);
                        sys.set(row, col, v);
                    }
                }
                for k in 0..m.dims[t] {
                    let coef = ma.get(k, c);
                    if !coef.is_zero() {
                        let col = offsets[t] + r * m.dims[t] + k;
                        let v = f.sub(sys.get(row, col), coef);
                        sys.set(row, col, v);
                    }
                }
                row += 1;
            }
        }
    }
    let kernel = sys.kernel();
    Ok((0..kernel.cols())
        .map(|j| {
            let maps = (0..m.dims.len())
                .map(|v| {
                    let mut mat = Mat::zeros(f, n.dims[v], m.dims[v]);
                    for r in 0..n.dims[v] {
                        for c in 0..m.dims[v] {
                            mat.set(r, c, kernel.get(offsets[v] + r * m.dims[v] + c, j).clone());
                        }
                    }
                    mat
                })
                .collect();
            RepMorphism { source: m.clone(), target: n.clone(), maps }
        })
        .collect())
}

pub fn hom_dim(m: &Rep, n: &Rep) -> Result<usize> {
    Ok(hom_basis(m, n)?.len())
}

/// Sum of the images of all maps from modules in `sources` into `x`, with its inclusion.
pub fn trace(sources: &[&Rep], x: &Rep) -> Result<(Rep, RepMorphism)> {
    let f = x.field();
    let mut spans: Vec<Mat> = x.dims.iter().map(|&d| Mat::zeros(f, d, 0)).collect();
    for s in sources {
        for h in hom_basis(s, x)? {
            for (v, span) in spans.iter_mut().enumerate() {
                *span = span.hstack(&h.maps[v]);
            }
        }
    }
    Ok(x.submodule(spans.iter().map(Mat::image_basis).collect()))
}

/// `x / trace(sources, x)`: the torsion-free part of `x` for the torsion class `Gen(sources)`.
pub fn quotient_by_trace(sources: &[&Rep], x: &Rep) -> Result<Rep> {
    let (_, incl) = trace(sources, x)?;
    Ok(incl.cokernel().0)
}

/// A direct sum of indecomposable projectives `⊕ P(v_i)` with an explicit path basis.
///
/// At vertex `w` the basis lists, summand by summand, the basis paths from `v_i` to `w`.
#[derive(Clone, Debug)]
pub struct FreeModule {
    algebra: Arc<BoundQuiverAlgebra>,
    summands: Vec<usize>,
    /// `basis[w]` = list of (summand index, path index) in order.
    basis: Vec<Vec<(usize, usize)>>,
}

impl FreeModule {
    pub fn new(algebra: Arc<BoundQuiverAlgebra>, summands: Vec<usize>) -> FreeModule {
        let n = algebra.rank();
        let mut basis = vec![Vec::new(); n];
        for (i, &v) in summands.iter().enumerate() {
            for (pi, p) in algebra.path_basis().iter().enumerate() {
                if p.source == v {
                    basis[p.target].push((i, pi));
                }
            }
        }
        FreeModule { algebra, summands, basis }
    }

    pub fn summands(&self) -> &[usize] {
        &self.summands
    }

    pub fn position(&self, vertex: usize, summand: usize, path: usize) -> Option<usize> {
        self.basis[vertex].iter().position(|&(s, p)| s == summand && p == path)
    }

    /// Position of the generator `e_{v_i}` of summand `i`.
    pub fn generator_position(&self, summand: usize) -> usize {
        let v = self.summands[summand];
        let trivial = self.algebra.path_position(v, &[]).expect("trivial path is a basis path");
        self.position(v, summand, trivial).expect("generator present")
    }

    /// Coefficients `(summand, path index, scalar)` of a vector at vertex `w`.
    pub fn decode(&self, w: usize, vector: &[Scalar]) -> Vec<(usize, usize, Scalar)> {
        self.basis[w].iter().zip(vector).filter(|(_, c)| !c.is_zero()).map(|(&(s, p), c)| (s, p, c.clone())).collect()
    }

    pub fn rep(&self) -> Rep {
        let alg = &self.algebra;
        let f = alg.field();
        let dims: Vec<usize> = self.basis.iter().map(Vec::len).collect();
        let arrows = alg
            .quiver()
            .arrows
            .iter()
            .enumerate()
            .map(|(ai, a)| {
                let mut m = Mat::zeros(f, dims[a.target], dims[a.source]);
                for (col, &(s, pi)) in self.basis[a.source].iter().enumerate() {
                    let p = &alg.path_basis()[pi];
                    let mut ext = p.arrows.clone();
                    ext.push(ai);
                    if let Some(qi) = alg.path_position(p.source, &ext) {
                        let row = self.position(a.target, s, qi).expect("extended path in basis");
                        m.set(row, col, f.one());
                    }
                }
                m
            })
            .collect();
        Rep { algebra: alg.clone(), dims, arrows }
    }

    /// The morphism out of this free module sending generator `i` to `images[i] ∈ target_{v_i}`.
    pub fn morphism_from_generators(&self, target: &Rep, images: &[Vec<Scalar>]) -> RepMorphism {
        let alg = &self.algebra;
        let f = alg.field();
        let source = self.rep();
        let maps = (0..alg.rank())
            .map(|w| {
                let cols: Vec<Vec<Scalar>> = self.basis[w]
                    .iter()
                    .map(|&(s, pi)| target.action(&alg.path_basis()[pi]).mul_vec(&images[s]))
                    .collect();
                Mat::from_columns(f, target.dims[w], &cols)
            })
            .collect();
        RepMorphism { source, target: target.clone(), maps }
    }
}

/// A projective cover `P0 ↠ M`.
#[derive(Clone, Debug)]
pub struct ProjectiveCover {
    pub free: FreeModule,
    pub map: RepMorphism,
}

pub fn projective_cover(m: &Rep) -> ProjectiveCover {
    let alg = m.algebra.clone();
    let rad = m.radical_bases();
    let mut summands = Vec::new();
    let mut images = Vec::new();
    for (v, r) in rad.iter().enumerate() {
        let comp = r.complement_basis();
        for j in 0..comp.cols() {
            summands.push(v);
            images.push(comp.column(j));
        }
    }
    let free = FreeModule::new(alg, summands);
    let map = free.morphism_from_generators(m, &images);
    ProjectiveCover { free, map }
}

/// A minimal projective presentation `P1 → P0 → M → 0`.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub p0: FreeModule,
    pub p1: FreeModule,
    /// `P1 → P0`.
    pub differential: RepMorphism,
    /// `P0 ↠ M`.
    pub cover: RepMorphism,
    /// Inclusion of the first syzygy `ΩM ↪ P0`.
    pub syzygy: RepMorphism,
}

pub fn min_presentation(m: &Rep) -> Presentation {
    let cover = projective_cover(m);
    let (_, syz) = cover.map.kernel();
    let kcover = projective_cover(&syz.source);
    let differential = kcover.map.then(&syz);
    Presentation { p0: cover.free, p1: kcover.free, differential, cover: cover.map, syzygy: syz }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::AlgebraDescription;

    fn a2() -> Arc<BoundQuiverAlgebra> {
        BoundQuiverAlgebra::build(&AlgebraDescription::linear(2, false)).unwrap()
    }

    #[test]
    fn projective_dimension_vectors() {
        let alg = a2();
        assert_eq!(Rep::projective(&alg, 0).unwrap().dim_vector(), &[1, 1]);
        assert_eq!(Rep::projective(&alg, 1).unwrap().dim_vector(), &[0, 1]);
        assert_eq!(Rep::projective(&alg, 1).unwrap(), Rep::simple(&alg, 1).unwrap());
        assert!(Rep::simple(&alg, 0).unwrap().arrow_map(0).is_zero());
        assert!(matches!(Rep::projective(&alg, 5), Err(Error::UnknownVertex(_))));
    }

    #[test]
    fn hom_dimensions_on_a2() {
        let alg = a2();
        let p1 = Rep::projective(&alg, 0).unwrap();
        let s1 = Rep::simple(&alg, 0).unwrap();
        let s2 = Rep::simple(&alg, 1).unwrap();
        assert_eq!(hom_dim(&p1, &s1).unwrap(), 1);
        assert_eq!(hom_dim(&s1, &p1).unwrap(), 0);
        assert_eq!(hom_dim(&p1, &s2).unwrap(), 0);
        assert_eq!(hom_dim(&s2, &p1).unwrap(), 1);
        assert!(hom_dim(&p1, &p1).unwrap() >= 1);
        for h in hom_basis(&s2, &p1).unwrap() {
            assert!(h.is_valid());
        }
    }

    #[test]
    fn kernel_cokernel_image() {
        let alg = a2();
        let p1 = Rep::projective(&alg, 0).unwrap();
        let s2 = Rep::simple(&alg, 1).unwrap();
        assert!(RepMorphism::identity(&p1).kernel().0.is_zero());
        let incl = hom_basis(&s2, &p1).unwrap().remove(0);
        let (coker, _) = incl.cokernel();
        assert_eq!(coker.dim_vector(), &[1, 0]);
        assert!(RepMorphism::zero(&p1, &s2).image().0.is_zero());
        let (k, kin) = incl.kernel();
        assert!(k.is_zero());
        assert!(kin.is_valid());
    }

    #[test]
    fn traces_on_a2() {
        let alg = a2();
        let p1 = Rep::projective(&alg, 0).unwrap();
        let s1 = Rep::simple(&alg, 0).unwrap();
        let s2 = Rep::simple(&alg, 1).unwrap();
        let (t, _) = trace(&[&s2], &p1).unwrap();
        assert_eq!(t.dim_vector(), &[0, 1]);
        assert_eq!(quotient_by_trace(&[&s2], &p1).unwrap().dim_vector(), &[1, 0]);
        assert_eq!(trace(&[&p1], &p1).unwrap().0.dim(), 2);
        assert!(trace(&[&s1], &p1).unwrap().0.is_zero());
    }

    #[test]
    fn covers_and_presentations() {
        let alg = a2();
        let s1 = Rep::simple(&alg, 0).unwrap();
        let pres = min_presentation(&s1);
        assert_eq!(pres.p0.summands(), &[0]);
        assert_eq!(pres.p1.summands(), &[1]);
        assert_eq!(pres.syzygy.source.dim_vector(), &[0, 1]);
        assert!(pres.differential.then(&pres.cover).is_zero());
        let p1 = Rep::projective(&alg, 0).unwrap();
        let c = projective_cover(&p1);
        assert_eq!(c.free.summands(), &[0]);
        assert!(c.map.is_iso());
        assert!(min_presentation(&p1).p1.summands().is_empty());
    }

    #[test]
    fn duality_is_an_involution() {
        let alg = a2();
        let p1 = Rep::projective(&alg, 0).unwrap();
        let d = p1.dualize();
        assert_eq!(d.dim_vector(), &[1, 1]);
        assert_eq!(d.algebra().quiver().arrows[0].source, 1);
        let dd = d.dualize().rebind(&alg).unwrap();
        assert_eq!(dd, p1);
        let ds1 = Rep::simple(&alg, 0).unwrap().dualize();
        assert_eq!(ds1, Rep::simple(&alg.opposite(), 0).unwrap());
    }

    #[test]
    fn relation_violations_are_rejected() {
        let alg = BoundQuiverAlgebra::build(&AlgebraDescription::linear(3, true)).unwrap();
        let f = alg.field();
        let one = Mat::identity(f, 1);
        assert!(Rep::new(alg.clone(), vec![1, 1, 1], vec![one.clone(), one.clone()]).is_err());
        assert!(Rep::new(alg, vec![1, 1, 0], vec![one, Mat::zeros(f, 0, 1)]).is_ok());
    }
}
