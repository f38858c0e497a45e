//! Quivers with monomial relations and their finite path bases.
//!
//! Convention: a path `[a, b]` traverses `a` first and then `b`. On a left
//! module it acts as `M(b) * M(a)`.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::FieldSpec;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quiver {
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn vertex_index(&self, name: &str) -> Result<usize> {
        self.vertices.iter().position(|v| v == name).ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn arrow_index(&self, name: &str) -> Result<usize> {
        self.arrows.iter().position(|a| a.name == name).ok_or_else(|| Error::UnknownArrow(name.to_string()))
    }
}

/// A path in the quiver. Trivial paths have no arrows and `source == target`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(v: usize) -> Path {
        Path { source: v, target: v, arrows: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_trivial()
    }
}

/// Serialized form of an algebra: the ingress format for files.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDescription {
    #[serde(default)]
    pub field: FieldDescription,
    pub vertices: Vec<String>,
    #[serde(default)]
    pub arrows: Vec<ArrowDescription>,
    #[serde(default)]
    pub relations: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldDescription {
    #[serde(default)]
    pub characteristic: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrowDescription {
    pub name: String,
    pub from: String,
    pub to: String,
}

impl AlgebraDescription {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    /// Linear `A_n`: `1 -> 2 -> ... -> n`, optionally with all paths of length two killed.
    pub fn linear(n: usize, rad_square_zero: bool) -> Self {
        let vertices: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
        let arrows: Vec<ArrowDescription> = (1..n)
            .map(|i| ArrowDescription { name: format!("a{i}"), from: i.to_string(), to: (i + 1).to_string() })
            .collect();
        let relations = if rad_square_zero {
            (1..n.saturating_sub(1)).map(|i| vec![format!("a{i}"), format!("a{}", i + 1)]).collect()
        } else {
            Vec::new()
        };
        AlgebraDescription { field: FieldDescription::default(), vertices, arrows, relations }
    }

    pub fn with_characteristic(mut self, p: u64) -> Self {
        self.field.characteristic = p;
        self
    }
}

/// A finite-dimensional bound quiver algebra `kQ / I` with `I` generated by paths.
#[derive(Debug)]
pub struct BoundQuiverAlgebra {
    quiver: Quiver,
    field: FieldSpec,
    relations: Vec<Vec<usize>>,
    path_basis: Vec<Path>,
    path_index: HashMap<(usize, Vec<usize>), usize>,
    opposite: OnceLock<Arc<BoundQuiverAlgebra>>,
}

impl PartialEq for BoundQuiverAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.quiver == other.quiver && self.field == other.field && self.relations == other.relations
    }
}

impl Eq for BoundQuiverAlgebra {}

impl BoundQuiverAlgebra {
    pub fn build(desc: &AlgebraDescription) -> Result<Arc<Self>> {
        let field = FieldSpec::new(desc.field.characteristic)?;
        if desc.vertices.is_empty() {
            return Err(Error::EmptyQuiver);
        }
        let mut vertices = Vec::new();
        for v in &desc.vertices {
            if vertices.contains(v) {
                return Err(Error::DuplicateName(v.clone()));
            }
            vertices.push(v.clone());
        }
        let mut quiver = Quiver { vertices, arrows: Vec::new() };
        for a in &desc.arrows {
            if quiver.arrows.iter().any(|b| b.name == a.name) || quiver.vertices.contains(&a.name) {
                return Err(Error::DuplicateName(a.name.clone()));
            }
            let source = quiver.vertex_index(&a.from)?;
            let target = quiver.vertex_index(&a.to)?;
            quiver.arrows.push(Arrow { name: a.name.clone(), source, target });
        }
        let mut relations = Vec::new();
        for rel in &desc.relations {
            if rel.len() < 2 {
                return Err(Error::MalformedRelation(rel.clone(), "length below 2".into()));
            }
            let mut idx = Vec::new();
            for name in rel {
                idx.push(
                    quiver
                        .arrow_index(name)
                        .map_err(|_| Error::MalformedRelation(rel.clone(), format!("unknown arrow `{name}`")))?,
                );
            }
            for w in idx.windows(2) {
                if quiver.arrows[w[0]].target != quiver.arrows[w[1]].source {
                    return Err(Error::MalformedRelation(
                        rel.clone(),
                        format!(
                            "`{}` does not end where `{}` starts",
                            quiver.arrows[w[0]].name, quiver.arrows[w[1]].name
                        ),
                    ));
                }
            }
            relations.push(idx);
        }
        Self::from_parts(quiver, field, relations).map(Arc::new)
    }

    fn from_parts(quiver: Quiver, field: FieldSpec, relations: Vec<Vec<usize>>) -> Result<Self> {
        let path_basis = enumerate_paths(&quiver, &relations)?;
        let path_index = path_basis.iter().enumerate().map(|(i, p)| ((p.source, p.arrows.clone()), i)).collect();
        Ok(BoundQuiverAlgebra { quiver, field, relations, path_basis, path_index, opposite: OnceLock::new() })
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn relations(&self) -> &[Vec<usize>] {
        &self.relations
    }

    pub fn path_basis(&self) -> &[Path] {
        &self.path_basis
    }

    /// Number of vertices, i.e. the number of simple modules.
    pub fn rank(&self) -> usize {
        self.quiver.vertices.len()
    }

    pub fn dim(&self) -> usize {
        self.path_basis.len()
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.quiver.vertices[v]
    }

    /// Index of a path in the basis, or `None` if it is zero in the algebra.
    pub fn path_position(&self, source: usize, arrows: &[usize]) -> Option<usize> {
        self.path_index.get(&(source, arrows.to_vec())).copied()
    }

    /// Basis paths from `from` to `to`, in basis order.
    pub fn paths_between(&self, from: usize, to: usize) -> Vec<usize> {
        (0..self.path_basis.len())
            .filter(|&i| self.path_basis[i].source == from && self.path_basis[i].target == to)
            .collect()
    }

    pub fn describe_path(&self, p: &Path) -> String {
        if p.is_trivial() {
            format!("e{}", self.vertex_name(p.source))
        } else {
            p.arrows.iter().map(|&a| self.quiver.arrows[a].name.as_str()).collect::<Vec<_>>().join("*")
        }
    }

    /// The opposite algebra: arrows reversed, relations read backwards.
    pub fn opposite(&self) -> Arc<BoundQuiverAlgebra> {
        self.opposite
            .get_or_init(|| {
                let quiver = Quiver {
                    vertices: self.quiver.vertices.clone(),
                    arrows: self
                        .quiver
                        .arrows
                        .iter()
                        .map(|a| Arrow { name: a.name.clone(), source: a.target, target: a.source })
                        .collect(),
                };
                let relations = self.relations.iter().map(|r| r.iter().rev().copied().collect()).collect();
                Arc::new(
                    Self::from_parts(quiver, self.field, relations)
                        .expect("opposite of a finite-dimensional algebra is finite-dimensional"),
                )
            })
            .clone()
    }

    pub fn description(&self) -> AlgebraDescription {
        AlgebraDescription {
            field: FieldDescription { characteristic: self.field.characteristic() },
            vertices: self.quiver.vertices.clone(),
            arrows: self
                .quiver
                .arrows
                .iter()
                .map(|a| ArrowDescription {
                    name: a.name.clone(),
                    from: self.quiver.vertices[a.source].clone(),
                    to: self.quiver.vertices[a.target].clone(),
                })
                .collect(),
            relations: self
                .relations
                .iter()
                .map(|r| r.iter().map(|&a| self.quiver.arrows[a].name.clone()).collect())
                .collect(),
        }
    }
}

fn contains_relation_suffix(arrows: &[usize], relations: &[Vec<usize>]) -> bool {
    relations.iter().any(|r| arrows.ends_with(r))
}

/// All paths avoiding every relation as a contiguous subpath.
///
/// Relation-free paths are walks in the automaton whose states are the last
/// `m - 1` arrows (`m` the longest relation), so a surviving path longer than
/// the number of states proves an infinite family.
fn enumerate_paths(quiver: &Quiver, relations: &[Vec<usize>]) -> Result<Vec<Path>> {
    let m = relations.iter().map(Vec::len).max().unwrap_or(1);
    let a = quiver.arrows.len();
    let mut states: usize = 0;
    let mut pow: usize = 1;
    for _ in 0..m {
        states = states.saturating_add(pow);
        pow = pow.saturating_mul(a.max(1));
    }
    // A longer path revisits a (vertex, recent arrows) state and can be pumped.
    let limit = states.saturating_mul(quiver.vertices.len()).min(10_000);

    let mut basis: Vec<Path> = (0..quiver.vertices.len()).map(Path::trivial).collect();
    let mut frontier = basis.clone();
    let mut length = 0;
    while !frontier.is_empty() {
        length += 1;
        if length > limit {
            return Err(Error::InfiniteDimensional(length));
        }
        let mut next = Vec::new();
        for p in &frontier {
            for (ai, arrow) in quiver.arrows.iter().enumerate() {
                if arrow.source != p.target {
                    continue;
                }
                let mut arrows = p.arrows.clone();
                arrows.push(ai);
                if contains_relation_suffix(&arrows, relations) {
                    continue;
                }
                next.push(Path { source: p.source, target: arrow.target, arrows });
            }
        }
        basis.extend(next.iter().cloned());
        frontier = next;
    }
    Ok(basis)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn desc(vertices: &[&str], arrows: &[(&str, &str, &str)], relations: &[&[&str]]) -> AlgebraDescription {
        AlgebraDescription {
            field: FieldDescription::default(),
            vertices: vertices.iter().map(|s| s.to_string()).collect(),
            arrows: arrows
                .iter()
                .map(|(n, f, t)| ArrowDescription { name: n.to_string(), from: f.to_string(), to: t.to_string() })
                .collect(),
            relations: relations.iter().map(|r| r.iter().map(|s| s.to_string()).collect()).collect(),
        }
    }

    #[test]
    fn a2_has_three_basis_paths() {
        let alg = BoundQuiverAlgebra::build(&desc(&["1", "2"], &[("a", "1", "2")], &[])).unwrap();
        assert_eq!(alg.dim(), 3);
        let names: Vec<String> = alg.path_basis().iter().map(|p| alg.describe_path(p)).collect();
        assert_eq!(names, vec!["e1", "e2", "a"]);
    }

    #[test]
    fn free_loop_is_infinite() {
        let err = BoundQuiverAlgebra::build(&desc(&["1"], &[("l", "1", "1")], &[])).unwrap_err();
        assert!(matches!(err, Error::InfiniteDimensional(_)));
    }

    #[test]
    fn loop_with_square_zero_is_finite() {
        let alg = BoundQuiverAlgebra::build(&desc(&["1"], &[("l", "1", "1")], &[&["l", "l"]])).unwrap();
        assert_eq!(alg.dim(), 2);
    }

    #[test]
    fn a3_rad_square_zero_has_dimension_five() {
        let alg = BoundQuiverAlgebra::build(&AlgebraDescription::linear(3, true)).unwrap();
        assert_eq!(alg.dim(), 5);
        assert!(alg.path_basis().iter().all(|p| p.len() <= 1));
    }

    #[test]
    fn malformed_relations_are_rejected() {
        let short = desc(&["1", "2"], &[("a", "1", "2")], &[&["a"]]);
        assert!(matches!(BoundQuiverAlgebra::build(&short), Err(Error::MalformedRelation(..))));
        let broken = desc(&["1", "2", "3"], &[("a", "1", "2"), ("b", "2", "3")], &[&["b", "a"]]);
        assert!(matches!(BoundQuiverAlgebra::build(&broken), Err(Error::MalformedRelation(..))));
    }

    #[test]
    fn opposite_reverses_arrows_and_relations() {
        let alg = BoundQuiverAlgebra::build(&AlgebraDescription::linear(3, true)).unwrap();
        let op = alg.opposite();
        assert_eq!(op.quiver().arrows[0].source, 1);
        assert_eq!(op.quiver().arrows[0].target, 0);
        assert_eq!(op.relations(), &[vec![1, 0]]);
        assert_eq!(*op.opposite(), *alg);
        assert_eq!(op.dim(), alg.dim());
    }

    #[test]
    fn unknown_vertex_reported() {
        let bad = desc(&["1"], &[("a", "1", "9")], &[]);
        assert_eq!(BoundQuiverAlgebra::build(&bad).unwrap_err(), Error::UnknownVertex("9".into()));
    }
}
