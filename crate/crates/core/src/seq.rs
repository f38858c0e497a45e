//! τ-exceptional sequences, TF-orderings, the ω bijection, mutation and transitivity paths.
//!
//! Sequences are written `(X_k, …, X_n)` with `n` the rank of the ambient wide subcategory.
//! Positions passed to mutation are these absolute indices, so a complete sequence has
//! indices `1..n` and `φ_i` acts on `(X_i, X_{i+1})`.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;
use std::sync::{Arc, RwLock};

use serde::{Deserialize, Serialize};

use crate::catalog::Catalog;
use crate::error::{Error, Result};
use crate::ids::{IndId, IndSet, IndecObject, StrObject};
use crate::tilt::{Engine, Wide};

pub type Pair = (IndId, IndId);

/// Pairs in a context grouped by their `J`.
pub type PairsByJ = Arc<BTreeMap<IndSet, Vec<Pair>>>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Op {
    Phi,
    Psi,
}

impl Op {
    pub fn inverse(self) -> Op {
        match self {
            Op::Phi => Op::Psi,
            Op::Psi => Op::Phi,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Op::Phi => "φ",
            Op::Psi => "ψ",
        }
    }
}

impl std::str::FromStr for Op {
    type Err = Error;

    fn from_str(s: &str) -> Result<Op> {
        match s.trim().to_lowercase().as_str() {
            "phi" | "φ" | "left" => Ok(Op::Phi),
            "psi" | "ψ" | "right" => Ok(Op::Psi),
            other => Err(Error::Parse(format!("unknown mutation operator {other:?}"))),
        }
    }
}

/// `op_index^exponent`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Step {
    pub op: Op,
    pub index: usize,
    pub exponent: usize,
}

fn subscript(n: usize) -> String {
    n.to_string().chars().map(|c| char::from_u32(0x2080 + c.to_digit(10).unwrap_or(0)).unwrap_or(c)).collect()
}

fn superscript(n: usize) -> String {
    const SUP: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    n.to_string().chars().map(|c| SUP[c.to_digit(10).unwrap_or(0) as usize]).collect()
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.op.symbol(), subscript(self.index))?;
        if self.exponent > 1 {
            write!(f, "{}", superscript(self.exponent))?;
        }
        Ok(())
    }
}

/// Append a step, merging with or cancelling against the previous one.
pub fn push_step(steps: &mut Vec<Step>, step: Step) {
    if step.exponent == 0 {
        return;
    }
    match steps.last_mut() {
        Some(last) if last.index == step.index && last.op == step.op => last.exponent += step.exponent,
        Some(last) if last.index == step.index => {
            if last.exponent > step.exponent {
                last.exponent -= step.exponent;
            } else {
                let rest = step.exponent - last.exponent;
                steps.pop();
                push_step(steps, Step { exponent: rest, ..step });
            }
        }
        _ => steps.push(step),
    }
}

pub fn inverse_steps(steps: &[Step]) -> Vec<Step> {
    steps.iter().rev().map(|s| Step { op: s.op.inverse(), ..*s }).collect()
}

pub fn word_length(steps: &[Step]) -> usize {
    steps.iter().map(|s| s.exponent).sum()
}

pub fn format_steps(steps: &[Step]) -> String {
    if steps.is_empty() {
        return "id".to_string();
    }
    steps.iter().map(Step::to_string).collect::<Vec<_>>().join(" ")
}

/// A τ-exceptional sequence with its chain of perpendicular categories.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TauES {
    terms: Vec<IndId>,
    /// `ctx[p] = J(X at positions p..)`, so `ctx[len]` is the ambient category.
    ctx: Vec<Wide>,
}

impl TauES {
    pub fn terms(&self) -> &[IndId] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn ambient(&self) -> Wide {
        self.ctx[self.terms.len()]
    }

    /// `J(X_k, …, X_n)` by the recursive definition.
    pub fn j(&self) -> Wide {
        self.ctx[0]
    }

    /// The category in which the term at position `p` is τ-rigid.
    pub fn context_of(&self, p: usize) -> Wide {
        self.ctx[p + 1]
    }

    /// The absolute index `k` of the first term.
    pub fn first_index(&self) -> usize {
        self.ambient().rank() + 1 - self.terms.len()
    }

    pub fn is_complete(&self) -> bool {
        self.terms.len() == self.ambient().rank()
    }

    pub fn set(&self) -> IndSet {
        self.terms.iter().copied().collect()
    }

    /// Absolute mutation indices `k..n-1`.
    pub fn indices(&self) -> std::ops::Range<usize> {
        let k = self.first_index();
        k..k + self.terms.len().saturating_sub(1)
    }
}

/// A sequence of mutation steps, applied left to right, with its verified endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MutationWord {
    pub steps: Vec<Step>,
    pub source: TauES,
    pub target: TauES,
}

impl MutationWord {
    pub fn len(&self) -> usize {
        word_length(&self.steps)
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

impl fmt::Display for MutationWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_steps(&self.steps))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Regularity {
    pub left: bool,
    pub right: bool,
}

/// φ and ψ on the pairs of a context `V` sharing one perpendicular category `𝒲`.
#[derive(Clone, Debug, Default)]
pub struct PairTable {
    pub pairs: Vec<Pair>,
    pub phi: BTreeMap<Pair, Pair>,
    pub psi: BTreeMap<Pair, Pair>,
    pub left_irregular: Vec<Pair>,
    pub right_irregular: Vec<Pair>,
}

/// Outcome of [`SeqEngine::normalize`].
#[derive(Clone, Debug)]
pub struct Normalization {
    pub result: TauES,
    pub word: MutationWord,
    /// `FiltGen` of the sequence before each φ-step and after the last one.
    pub filtgen_chain: Vec<IndSet>,
}

impl Normalization {
    pub fn phi_steps(&self) -> usize {
        self.filtgen_chain.len() - 1
    }
}

/// Mutation graph on `τ-es(𝒲)`. An edge `(a, b, i)` means `φ_i(a) = b`.
#[derive(Clone, Debug)]
pub struct MutationGraph {
    pub vertices: Vec<TauES>,
    pub edges: Vec<(usize, usize, usize)>,
}

impl MutationGraph {
    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for &(a, b, _) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }

    /// Undirected BFS distances from `from`.
    pub fn distances(&self, from: usize) -> Vec<Option<usize>> {
        let adj = self.adjacency();
        let mut dist = vec![None; self.vertices.len()];
        dist[from] = Some(0);
        let mut queue = VecDeque::from([from]);
        while let Some(a) = queue.pop_front() {
            let d = dist[a].unwrap_or(0);
            for &b in &adj[a] {
                if dist[b].is_none() {
                    dist[b] = Some(d + 1);
                    queue.push_back(b);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        self.vertices.is_empty() || self.distances(0).iter().all(Option::is_some)
    }

    pub fn index_of(&self, x: &TauES) -> Option<usize> {
        self.vertices.binary_search(x).ok()
    }

    /// Graphviz export; φ-edges are drawn solid, with ψ as the reverse direction.
    pub fn to_dot(&self, catalog: &Catalog) -> String {
        let mut out = String::from("digraph mutation {\n  node [shape=box];\n");
        for (i, v) in self.vertices.iter().enumerate() {
            out.push_str(&format!("  v{} [label=\"{}\"];\n", i, format_sequence(catalog, v.terms())));
        }
        for &(a, b, i) in &self.edges {
            out.push_str(&format!(
                "  v{a} -> v{b} [label=\"φ{0} / ψ{0} back\", color=\"{1}\"];\n",
                subscript(i),
                if a == b { "gray" } else { "blue" }
            ));
        }
        out.push_str("}\n");
        out
    }
}

/// `(l1, l2, …)` with canonical labels.
pub fn format_sequence(catalog: &Catalog, terms: &[IndId]) -> String {
    let parts: Vec<&str> = terms.iter().map(|&i| catalog.label(i)).collect();
    format!("({})", parts.join(", "))
}

/// Parse `(a, b, …)`; the parentheses are optional.
pub fn parse_sequence(catalog: &Catalog, text: &str) -> Result<Vec<IndId>> {
    let t = text.trim();
    let t = t.strip_prefix('(').unwrap_or(t);
    let t = t.strip_suffix(')').unwrap_or(t);
    if t.trim().is_empty() {
        return Ok(Vec::new());
    }
    t.split(',').map(|s| catalog.lookup(s.trim())).collect()
}

fn set_of(ids: &[IndId]) -> IndSet {
    ids.iter().copied().collect()
}

fn module(s: IndSet) -> StrObject {
    StrObject::module(s)
}

pub struct SeqEngine {
    engine: Arc<Engine>,
    pairs_by_j: RwLock<HashMap<IndSet, PairsByJ>>,
    tables: RwLock<HashMap<(IndSet, IndSet), Arc<PairTable>>>,
}

impl SeqEngine {
    pub fn new(engine: Arc<Engine>) -> SeqEngine {
        SeqEngine { engine, pairs_by_j: RwLock::default(), tables: RwLock::default() }
    }

    pub fn engine(&self) -> &Arc<Engine> {
        &self.engine
    }

    pub fn catalog(&self) -> &Arc<Catalog> {
        self.engine.catalog()
    }

    pub fn whole(&self) -> Wide {
        self.engine.whole()
    }

    fn label(&self, terms: &[IndId]) -> String {
        format_sequence(self.catalog(), terms)
    }

    // ---- sequences ---------------------------------------------------------------------

    /// Validate `terms` as a τ-exceptional sequence in `v`.
    pub fn sequence(&self, v: Wide, terms: Vec<IndId>) -> Result<TauES> {
        let e = &self.engine;
        let mut ctx = vec![v; terms.len() + 1];
        for p in (0..terms.len()).rev() {
            let c = ctx[p + 1];
            let x = terms[p];
            if !c.contains(x) || !e.rigid_in(c, IndSet::single(x)) {
                return Err(Error::NotExceptional(format!("{} at position {}", self.label(&terms), p + 1)));
            }
            ctx[p] = e.j(c, module(IndSet::single(x)))?;
        }
        Ok(TauES { terms, ctx })
    }

    /// A τ-exceptional sequence in `mods Λ`.
    pub fn tes(&self, terms: Vec<IndId>) -> Result<TauES> {
        self.sequence(self.whole(), terms)
    }

    pub fn is_tau_es(&self, v: Wide, terms: &[IndId]) -> bool {
        self.sequence(v, terms.to_vec()).is_ok()
    }

    /// `Y_i ∉ Gen(⊕_{j>i} Y_j)`, with `⊕Y` basic and τ_V-rigid.
    pub fn is_tf_ordered(&self, v: Wide, ys: &[IndId]) -> bool {
        let s = set_of(ys);
        s.len() == ys.len()
            && self.engine.rigid_in(v, s)
            && (0..ys.len()).all(|p| !self.engine.gen(set_of(&ys[p + 1..])).contains(ys[p]))
    }

    /// `ω(Y) = (X_k, …, X_n)` with `X_i = E_{M_i}(Y_i)`.
    pub fn omega(&self, v: Wide, ys: &[IndId]) -> Result<TauES> {
        let s = set_of(ys);
        if s.len() != ys.len() || !self.engine.rigid_in(v, s) {
            return Err(Error::NotTauRigid(self.label(ys)));
        }
        if !self.is_tf_ordered(v, ys) {
            return Err(Error::NotTFOrdered(self.label(ys)));
        }
        let mut xs = Vec::with_capacity(ys.len());
        for p in 0..ys.len() {
            let m = set_of(&ys[p + 1..]);
            match self.engine.e_map(v, module(m), IndecObject::Module(ys[p]))? {
                IndecObject::Module(x) => xs.push(x),
                other => {
                    return Err(Error::Mismatch(format!(
                        "E_{}({}) = {} is not a module",
                        self.catalog().set_label(m),
                        self.catalog().label(ys[p]),
                        self.catalog().object_label(other)
                    )))
                }
            }
        }
        self.sequence(v, xs)
    }

    /// `ω⁻¹`, computed right to left.
    pub fn omega_inverse(&self, x: &TauES) -> Result<Vec<IndId>> {
        let v = x.ambient();
        let mut ys = vec![IndId(0); x.len()];
        let mut m = IndSet::EMPTY;
        for p in (0..x.len()).rev() {
            match self.engine.e_inverse(v, module(m), IndecObject::Module(x.terms[p]))? {
                IndecObject::Module(y) => {
                    ys[p] = y;
                    m = m.with(y);
                }
                other => {
                    return Err(Error::Mismatch(format!(
                        "preimage of {} over {} is {}",
                        self.catalog().label(x.terms[p]),
                        self.catalog().set_label(m),
                        self.catalog().object_label(other)
                    )))
                }
            }
        }
        Ok(ys)
    }

    /// `J(𝒳)`, checked against `J(⊕ω⁻¹(𝒳))`.
    pub fn j_of_sequence(&self, x: &TauES) -> Result<Wide> {
        let rec = x.j();
        let ys = self.omega_inverse(x)?;
        let direct = self.engine.j(x.ambient(), module(set_of(&ys)))?;
        if rec.members != direct.members {
            return Err(Error::Mismatch(format!(
                "J{} = {} but J of the ω-preimage sum = {}",
                self.label(x.terms()),
                self.catalog().set_label(rec.members),
                self.catalog().set_label(direct.members)
            )));
        }
        Ok(rec)
    }

    // ---- pairs -------------------------------------------------------------------------

    fn require_pair(&self, v: Wide, p: Pair) -> Result<TauES> {
        self.sequence(v, vec![p.0, p.1]).map_err(|_| Error::NotAPair(self.label(&[p.0, p.1])))
    }

    fn e_inv_module(&self, v: Wide, t: StrObject, y: IndecObject) -> Result<IndId> {
        match self.engine.e_inverse(v, t, y)? {
            IndecObject::Module(x) => Ok(x),
            other => Err(Error::Mismatch(format!(
                "expected a module preimage of {} over {}, got {}",
                self.catalog().object_label(y),
                self.catalog().str_label(t),
                self.catalog().object_label(other)
            ))),
        }
    }

    /// `N₊`.
    fn plus_shift(&self, v: Wide, n: IndId) -> IndecObject {
        if v.rel_proj.contains(n) {
            IndecObject::Shifted(n)
        } else {
            IndecObject::Module(n)
        }
    }

    /// `(B, C)` is left regular if `C` is projective or `C ∉ 𝒫(⊥τ E⁻¹_C(B))`.
    pub fn is_left_regular(&self, v: Wide, (b, c): Pair) -> Result<bool> {
        self.require_pair(v, (b, c))?;
        if v.rel_proj.contains(c) {
            return Ok(true);
        }
        let e = &self.engine;
        let pre = self.e_inv_module(v, module(IndSet::single(c)), IndecObject::Module(b))?;
        let perp = e.perp_tau_in(v, IndSet::single(pre));
        Ok(!e.ext_proj(perp).contains(c))
    }

    /// `(X, Y)` is right regular if `E⁻¹_Y(X) ∈ 𝒫(⊥τY)` or `Y ∉ Gen E⁻¹_Y(X)`.
    pub fn is_right_regular(&self, v: Wide, (x, y): Pair) -> Result<bool> {
        self.require_pair(v, (x, y))?;
        let e = &self.engine;
        let pre = self.e_inv_module(v, module(IndSet::single(y)), IndecObject::Module(x))?;
        let perp = e.perp_tau_in(v, IndSet::single(y));
        Ok(e.ext_proj(perp).contains(pre) || !e.gen(IndSet::single(pre)).contains(y))
    }

    pub fn regularity(&self, v: Wide, p: Pair) -> Result<Regularity> {
        Ok(Regularity { left: self.is_left_regular(v, p)?, right: self.is_right_regular(v, p)? })
    }

    /// `φ(B, C) = (|E_{B_{C↑}}(C₊)|, B_{C↑})` for a left regular pair.
    pub fn phi_formula(&self, v: Wide, (b, c): Pair) -> Result<Pair> {
        let c_plus = self.plus_shift(v, c);
        let b_up = self.e_inv_module(v, StrObject::of(c_plus), IndecObject::Module(b))?;
        let first = self.engine.e_map(v, module(IndSet::single(b_up)), c_plus)?;
        Ok((first.id(), b_up))
    }

    /// `ψ(X, Y) = (E_{X⁺_{Y↑}}(Y), |X⁺_{Y↑}|)` for a right regular pair.
    pub fn psi_formula(&self, v: Wide, (x, y): Pair) -> Result<Pair> {
        let jy = self.engine.j(v, module(IndSet::single(y)))?;
        let x_plus = self.plus_shift(jy, x);
        let x_up = self.engine.e_inverse(v, module(IndSet::single(y)), x_plus)?;
        match self.engine.e_map(v, StrObject::of(x_up), IndecObject::Module(y))? {
            IndecObject::Module(first) => Ok((first, x_up.id())),
            other => Err(Error::Mismatch(format!(
                "ψ formula on {} gives the shifted object {}",
                self.label(&[x, y]),
                self.catalog().object_label(other)
            ))),
        }
    }

    /// τ-exceptional pairs in `v`, grouped by their perpendicular category.
    pub fn pairs_by_j(&self, v: Wide) -> Result<PairsByJ> {
        if let Some(m) = self.pairs_by_j.read().expect("cache").get(&v.members) {
            return Ok(m.clone());
        }
        let e = &self.engine;
        let mut groups: BTreeMap<IndSet, Vec<Pair>> = BTreeMap::new();
        for c in v.members.iter().filter(|&c| e.rigid_in(v, IndSet::single(c))) {
            let jc = e.j(v, module(IndSet::single(c)))?;
            for b in jc.members.iter().filter(|&b| e.rigid_in(jc, IndSet::single(b))) {
                let w = e.j(jc, module(IndSet::single(b)))?;
                groups.entry(w.members).or_default().push((b, c));
            }
        }
        let groups = Arc::new(groups);
        self.pairs_by_j.write().expect("cache").insert(v.members, groups.clone());
        Ok(groups)
    }

    /// φ and ψ on `S_𝒲`: the quoted formulas on regular pairs, and the unique leftover
    /// source sent to the unique leftover target otherwise.
    pub fn pair_table(&self, v: Wide, w: IndSet) -> Result<Arc<PairTable>> {
        if let Some(t) = self.tables.read().expect("cache").get(&(v.members, w)) {
            return Ok(t.clone());
        }
        let pairs = self.pairs_by_j(v)?.get(&w).cloned().unwrap_or_default();
        let mut table = PairTable { pairs: pairs.clone(), ..PairTable::default() };
        for &p in &pairs {
            if self.is_left_regular(v, p)? {
                table.phi.insert(p, self.phi_formula(v, p)?);
            } else {
                table.left_irregular.push(p);
            }
            if self.is_right_regular(v, p)? {
                table.psi.insert(p, self.psi_formula(v, p)?);
            } else {
                table.right_irregular.push(p);
            }
        }
        let context = format!("{} / {}", self.catalog().set_label(v.members), self.catalog().set_label(w));
        self.complete_bijection(&pairs, &mut table.phi, &context)?;
        self.complete_bijection(&pairs, &mut table.psi, &context)?;
        for (p, q) in &table.phi {
            if table.psi.get(q) != Some(p) {
                return Err(Error::Mismatch(format!(
                    "ψ does not invert φ on {} in {}",
                    self.label(&[p.0, p.1]),
                    context
                )));
            }
        }
        let table = Arc::new(table);
        self.tables.write().expect("cache").insert((v.members, w), table.clone());
        Ok(table)
    }

    fn complete_bijection(&self, pairs: &[Pair], map: &mut BTreeMap<Pair, Pair>, context: &str) -> Result<()> {
        let mut images: Vec<Pair> = map.values().copied().collect();
        images.sort();
        images.dedup();
        if images.len() != map.len() || images.iter().any(|q| !pairs.contains(q)) {
            return Err(Error::Mismatch(format!("regular mutation is not injective into S_W in {context}")));
        }
        let sources: Vec<Pair> = pairs.iter().copied().filter(|p| !map.contains_key(p)).collect();
        let targets: Vec<Pair> = pairs.iter().copied().filter(|q| images.binary_search(q).is_err()).collect();
        match (sources.as_slice(), targets.as_slice()) {
            ([], []) => Ok(()),
            ([s], [t]) => {
                map.insert(*s, *t);
                Ok(())
            }
            _ => Err(Error::IrregularAmbiguity {
                context: context.to_string(),
                sources: sources.len(),
                targets: targets.len(),
            }),
        }
    }

    fn table_for(&self, v: Wide, p: Pair) -> Result<Arc<PairTable>> {
        let x = self.require_pair(v, p)?;
        self.pair_table(v, x.j().members)
    }

    pub fn phi_pair(&self, v: Wide, p: Pair) -> Result<Pair> {
        Ok(self.table_for(v, p)?.phi[&p])
    }

    pub fn psi_pair(&self, v: Wide, p: Pair) -> Result<Pair> {
        Ok(self.table_for(v, p)?.psi[&p])
    }

    // ---- mutation ----------------------------------------------------------------------

    /// Replace `(X_i, X_{i+1})` by its image under `op` in `J(X_{i+2}, …, X_n)`.
    pub fn mutate(&self, x: &TauES, op: Op, i: usize) -> Result<TauES> {
        let range = x.indices();
        if !range.contains(&i) {
            return Err(Error::IndexOutOfRange { index: i, lo: x.first_index(), hi: range.end });
        }
        let p = i - x.first_index();
        let v = x.ctx[p + 2];
        let pair = (x.terms[p], x.terms[p + 1]);
        let (a, b) = match op {
            Op::Phi => self.phi_pair(v, pair)?,
            Op::Psi => self.psi_pair(v, pair)?,
        };
        let mut terms = x.terms.clone();
        terms[p] = a;
        terms[p + 1] = b;
        self.sequence(x.ambient(), terms)
    }

    pub fn apply(&self, x: &TauES, steps: &[Step]) -> Result<TauES> {
        let mut cur = x.clone();
        for s in steps {
            for _ in 0..s.exponent {
                cur = self.mutate(&cur, s.op, s.index)?;
            }
        }
        Ok(cur)
    }

    /// Apply `steps` to `source` and record the endpoint.
    pub fn word(&self, source: &TauES, steps: Vec<Step>) -> Result<MutationWord> {
        let target = self.apply(source, &steps)?;
        Ok(MutationWord { steps, source: source.clone(), target })
    }

    // ---- gen-minimality ----------------------------------------------------------------

    /// Gen-minimality in `v`, decided by the summand test and checked against
    /// `M = P_s(⊥J(M))`.
    pub fn is_gen_minimal_in(&self, v: Wide, m: IndSet) -> Result<bool> {
        let e = &self.engine;
        if !e.rigid_in(v, m) {
            return Err(Error::NotTauRigid(self.catalog().set_label(m)));
        }
        let g = e.gen(m);
        let by_definition = m.iter().all(|x| e.gen(m.without(x)) != g);
        let j = e.j(v, module(m))?;
        let torsion = e.left_perp(j.members).intersect(v.members);
        let by_characterization = e.split_proj(torsion) == m;
        if by_definition != by_characterization {
            return Err(Error::CharacterizationMismatch(self.catalog().set_label(m)));
        }
        Ok(by_definition)
    }

    pub fn is_gen_minimal(&self, m: IndSet) -> Result<bool> {
        self.is_gen_minimal_in(self.whole(), m)
    }

    // ---- enumeration -------------------------------------------------------------------

    /// TF-orderings of `⊕m` in `v`, built from the right.
    pub fn tf_orderings(&self, m: IndSet) -> Vec<Vec<IndId>> {
        let mut out = Vec::new();
        let mut tail = Vec::new();
        self.extend_tf(m, IndSet::EMPTY, &mut tail, &mut out);
        out.sort();
        out
    }

    fn extend_tf(&self, left: IndSet, used: IndSet, tail: &mut Vec<IndId>, out: &mut Vec<Vec<IndId>>) {
        if left.is_empty() {
            out.push(tail.iter().rev().copied().collect());
            return;
        }
        let g = self.engine.gen(used);
        for y in left.iter().filter(|&y| !g.contains(y)) {
            tail.push(y);
            self.extend_tf(left.without(y), used.with(y), tail, out);
            tail.pop();
        }
    }

    /// `τ-es(𝒲)` for `𝒲` inside `v`, via TF-orderings and ω, sorted.
    pub fn sequences_with_j(&self, v: Wide, w: IndSet) -> Result<Vec<TauES>> {
        let e = &self.engine;
        let wide = e.wide(w);
        let len = v.rank().saturating_sub(wide.rank());
        let mut out = Vec::new();
        for m in e.rigid_modules(v).into_iter().filter(|m| m.len() == len) {
            if e.j(v, module(m))?.members != w {
                continue;
            }
            for ys in self.tf_orderings(m) {
                out.push(self.omega(v, &ys)?);
            }
        }
        out.sort();
        Ok(out)
    }

    /// All τ-exceptional sequences in `v`, of every length, sorted.
    pub fn all_sequences(&self, v: Wide) -> Result<Vec<TauES>> {
        let mut out = Vec::new();
        for m in self.engine.rigid_modules(v) {
            for ys in self.tf_orderings(m) {
                out.push(self.omega(v, &ys)?);
            }
        }
        out.sort();
        Ok(out)
    }

    pub fn complete_sequences(&self) -> Result<Vec<TauES>> {
        self.sequences_with_j(self.whole(), IndSet::EMPTY)
    }

    pub fn mutation_graph(&self, v: Wide, w: IndSet) -> Result<MutationGraph> {
        use rayon::prelude::*;
        let vertices = self.sequences_with_j(v, w)?;
        let index: HashMap<&TauES, usize> = vertices.iter().enumerate().map(|(i, x)| (x, i)).collect();
        let images: Vec<Vec<(usize, TauES)>> = vertices
            .par_iter()
            .map(|x| x.indices().map(|i| Ok((i, self.mutate(x, Op::Phi, i)?))).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let mut edges = Vec::new();
        for (a, imgs) in images.into_iter().enumerate() {
            for (i, y) in imgs {
                let b = *index.get(&y).ok_or_else(|| {
                    Error::Mismatch(format!("φ{} leaves τ-es(W) at {}", i, self.label(vertices[a].terms())))
                })?;
                edges.push((a, b, i));
            }
        }
        Ok(MutationGraph { vertices, edges })
    }

    // ---- transitivity ------------------------------------------------------------------

    /// Minimal `ℓ` with `φ_i^ℓ(ω(Y)) = ω(Y′)` for TF-orderings differing by a swap at `i`.
    pub fn transposition_word(&self, v: Wide, ys: &[IndId], ys2: &[IndId]) -> Result<MutationWord> {
        let x = self.omega(v, ys)?;
        let target = self.omega(v, ys2)?;
        let diff: Vec<usize> = (0..ys.len().max(ys2.len())).filter(|&p| ys.get(p) != ys2.get(p)).collect();
        if diff.is_empty() {
            return self.word(&x, Vec::new());
        }
        let p = diff[0];
        if ys.len() != ys2.len() || diff != [p, p + 1] || ys[p] != ys2[p + 1] || ys[p + 1] != ys2[p] {
            return Err(Error::Mismatch(format!(
                "{} and {} do not differ by an adjacent swap",
                self.label(ys),
                self.label(ys2)
            )));
        }
        let i = x.first_index() + p;
        let bound = self.pair_table(x.ctx[p + 2], x.ctx[p].members)?.pairs.len();
        let (mut fwd, mut back) = (x.clone(), x.clone());
        for l in 1..=bound {
            fwd = self.mutate(&fwd, Op::Phi, i)?;
            if fwd == target {
                return self.word(&x, vec![Step { op: Op::Phi, index: i, exponent: l }]);
            }
            back = self.mutate(&back, Op::Psi, i)?;
            if back == target {
                return self.word(&x, vec![Step { op: Op::Psi, index: i, exponent: l }]);
            }
        }
        Err(Error::OrbitExhausted(bound))
    }

    /// Mutate until `⊕ω⁻¹` is gen-minimal, enlarging `FiltGen` at every φ-step.
    pub fn normalize(&self, x: &TauES) -> Result<Normalization> {
        let e = &self.engine;
        let v = x.ambient();
        let k = x.first_index();
        let mut cur = x.clone();
        let mut steps = Vec::new();
        let mut chain = vec![e.filtgen_w(v, cur.set())];
        loop {
            let ys = self.omega_inverse(&cur)?;
            let m = set_of(&ys);
            if self.is_gen_minimal_in(v, m)? {
                break;
            }
            let t = e.gen_w(v, m);
            let r = e.nonsplit_proj(t).intersect(m).first().ok_or_else(|| {
                Error::Mismatch(format!("{} is not gen-minimal but has no non-split summand", self.label(&ys)))
            })?;
            let pr = ys.iter().position(|&y| y == r).unwrap_or(0);
            let rest: Vec<IndId> = ys.iter().copied().filter(|&y| y != r).collect();
            let insert_at = |s: usize| {
                let mut o = rest.clone();
                o.insert(s, r);
                o
            };
            let s = (0..pr).rev().find(|&s| !self.is_tf_ordered(v, &insert_at(s))).ok_or_else(|| {
                Error::Mismatch(format!("no position to move {} to in {}", self.catalog().label(r), self.label(&ys)))
            })?;
            let mut order = ys.clone();
            for q in (s + 1..pr).rev() {
                let next = insert_at(q);
                let w = self.transposition_word(v, &order, &next)?;
                for st in w.steps {
                    push_step(&mut steps, st);
                }
                order = next;
            }
            cur = self.mutate(&self.omega(v, &order)?, Op::Phi, k + s)?;
            push_step(&mut steps, Step { op: Op::Phi, index: k + s, exponent: 1 });
            let f = e.filtgen_w(v, cur.set());
            let prev = *chain.last().unwrap_or(&IndSet::EMPTY);
            if !(prev.is_subset(f) && prev != f) {
                return Err(Error::NoStrictIncrease(self.label(cur.terms())));
            }
            chain.push(f);
        }
        let word = self.word(x, steps)?;
        if word.target != cur {
            return Err(Error::Mismatch(format!("normalization word does not reach {}", self.label(cur.terms()))));
        }
        Ok(Normalization { result: cur, word, filtgen_chain: chain })
    }

    /// Remove detours from a word: from each visited sequence, jump to the latest later
    /// one that is equal to it or one step away.
    pub fn shortcut(&self, w: &MutationWord) -> Result<MutationWord> {
        let mut states = vec![w.source.clone()];
        for s in &w.steps {
            for _ in 0..s.exponent {
                let next = self.mutate(states.last().unwrap_or(&w.source), s.op, s.index)?;
                states.push(next);
            }
        }
        let mut steps = Vec::new();
        let mut a = 0;
        while a + 1 < states.len() {
            let mut moves: Vec<(Op, usize, TauES)> = Vec::new();
            for i in states[a].indices() {
                for op in [Op::Phi, Op::Psi] {
                    moves.push((op, i, self.mutate(&states[a], op, i)?));
                }
            }
            let mut jumped = false;
            for b in (a + 1..states.len()).rev() {
                if states[b] == states[a] {
                    a = b;
                    jumped = true;
                    break;
                }
                if let Some((op, i, _)) = moves.iter().find(|m| m.2 == states[b]) {
                    push_step(&mut steps, Step { op: *op, index: *i, exponent: 1 });
                    a = b;
                    jumped = true;
                    break;
                }
            }
            if !jumped {
                return Err(Error::Mismatch("word visits a sequence not adjacent to its successor".into()));
            }
        }
        self.word(&w.source, steps)
    }

    /// A mutation word from `x1` to `x2`: normalize, reorder the common gen-minimal
    /// module by adjacent swaps, then undo the normalization of `x2`. Detours are cut.
    pub fn transitivity_path(&self, x1: &TauES, x2: &TauES) -> Result<MutationWord> {
        if x1.ambient() != x2.ambient() || self.j_of_sequence(x1)?.members != self.j_of_sequence(x2)?.members {
            return Err(Error::DifferentJ);
        }
        let v = x1.ambient();
        let n1 = self.normalize(x1)?;
        let n2 = self.normalize(x2)?;
        let mut order = self.omega_inverse(&n1.result)?;
        let goal = self.omega_inverse(&n2.result)?;
        if set_of(&order) != set_of(&goal) {
            return Err(Error::Mismatch(format!(
                "normal forms {} and {} have different modules",
                self.label(&order),
                self.label(&goal)
            )));
        }
        let rank = |y: IndId| goal.iter().position(|&g| g == y).unwrap_or(0);
        let mut steps = n1.word.steps.clone();
        let mut swapped = true;
        while swapped {
            swapped = false;
            for p in 0..order.len().saturating_sub(1) {
                if rank(order[p]) > rank(order[p + 1]) {
                    let mut next = order.clone();
                    next.swap(p, p + 1);
                    for st in self.transposition_word(v, &order, &next)?.steps {
                        push_step(&mut steps, st);
                    }
                    order = next;
                    swapped = true;
                }
            }
        }
        for st in inverse_steps(&n2.word.steps) {
            push_step(&mut steps, st);
        }
        let w = self.shortcut(&self.word(x1, steps)?)?;
        if &w.target != x2 {
            return Err(Error::Mismatch(format!(
                "path word {} ends at {} instead of {}",
                w,
                self.label(w.target.terms()),
                self.label(x2.terms())
            )));
        }
        Ok(w)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::{AlgebraDescription, BoundQuiverAlgebra};

    fn seq_engine(n: usize, rad2: bool) -> SeqEngine {
        let alg = BoundQuiverAlgebra::build(&AlgebraDescription::linear(n, rad2)).unwrap();
        let cat = Arc::new(Catalog::build(&alg, None).unwrap());
        SeqEngine::new(Arc::new(Engine::new(cat).unwrap()))
    }

    const S2: IndId = IndId(0);
    const S1: IndId = IndId(1);
    const P1: IndId = IndId(2);

    #[test]
    fn omega_on_a2() {
        let s = seq_engine(2, false);
        let w = s.whole();
        assert_eq!(s.omega(w, &[P1, S2]).unwrap().terms(), &[S1, S2]);
        assert_eq!(s.omega(w, &[S2, P1]).unwrap().terms(), &[S2, P1]);
        assert_eq!(s.omega(w, &[S1]).unwrap().terms(), &[S1]);
        assert_eq!(s.omega_inverse(&s.tes(vec![S1, S2]).unwrap()).unwrap(), vec![P1, S2]);
        assert_eq!(s.omega_inverse(&s.tes(vec![P1, S1]).unwrap()).unwrap(), vec![P1, S1]);
        assert!(matches!(s.omega(w, &[S2, P1, S1]), Err(Error::NotTauRigid(_))));
        assert!(matches!(s.omega(w, &[S1, P1]), Err(Error::NotTFOrdered(_))));
    }

    #[test]
    fn j_of_sequences() {
        let s = seq_engine(2, false);
        assert!(s.j_of_sequence(&s.tes(vec![S1, S2]).unwrap()).unwrap().members.is_empty());
        assert_eq!(s.j_of_sequence(&s.tes(vec![S2]).unwrap()).unwrap().members, IndSet::single(S1));
        assert!(s.tes(vec![S2, S1]).is_err());
    }

    #[test]
    fn phi_is_a_three_cycle_on_a2() {
        let s = seq_engine(2, false);
        let w = s.whole();
        assert_eq!(s.phi_pair(w, (S1, S2)).unwrap(), (P1, S1));
        assert_eq!(s.phi_pair(w, (P1, S1)).unwrap(), (S2, P1));
        assert_eq!(s.phi_pair(w, (S2, P1)).unwrap(), (S1, S2));
        assert_eq!(s.psi_pair(w, (S1, S2)).unwrap(), (S2, P1));
        for p in [(S1, S2), (S2, P1), (P1, S1)] {
            assert!(s.is_left_regular(w, p).unwrap());
            assert_eq!(s.psi_pair(w, s.phi_pair(w, p).unwrap()).unwrap(), p);
        }
        assert!(matches!(s.regularity(w, (S2, S1)), Err(Error::NotAPair(_))));
    }

    #[test]
    fn mutation_indices() {
        let s = seq_engine(2, false);
        let x = s.tes(vec![S1, S2]).unwrap();
        assert_eq!(s.mutate(&x, Op::Phi, 1).unwrap().terms(), &[P1, S1]);
        assert!(matches!(s.mutate(&x, Op::Phi, 2), Err(Error::IndexOutOfRange { .. })));
        let y = s.mutate(&x, Op::Psi, 1).unwrap();
        assert_eq!(s.mutate(&y, Op::Phi, 1).unwrap(), x);
    }

    #[test]
    fn gen_minimality_on_a2() {
        let s = seq_engine(2, false);
        assert!(s.is_gen_minimal(IndSet::single(P1).with(S2)).unwrap());
        assert!(!s.is_gen_minimal(IndSet::single(P1).with(S1)).unwrap());
        assert!(s.is_gen_minimal(IndSet::EMPTY).unwrap());
        for x in [S1, S2, P1] {
            assert!(s.is_gen_minimal(IndSet::single(x)).unwrap());
        }
    }

    #[test]
    fn words_merge_and_cancel() {
        let mut steps = Vec::new();
        push_step(&mut steps, Step { op: Op::Phi, index: 1, exponent: 2 });
        push_step(&mut steps, Step { op: Op::Phi, index: 1, exponent: 1 });
        assert_eq!(format_steps(&steps), "φ₁³");
        push_step(&mut steps, Step { op: Op::Psi, index: 1, exponent: 3 });
        assert!(steps.is_empty());
        push_step(&mut steps, Step { op: Op::Psi, index: 12, exponent: 1 });
        assert_eq!(format_steps(&steps), "ψ₁₂");
    }

    #[test]
    fn transposition_and_normalization_on_a2() {
        let s = seq_engine(2, false);
        let w = s.whole();
        let t = s.transposition_word(w, &[P1, S2], &[S2, P1]).unwrap();
        assert_eq!(t.to_string(), "ψ₁");
        assert_eq!(t.target.terms(), &[S2, P1]);
        assert!(s.transposition_word(w, &[P1, S2], &[P1, S2]).unwrap().is_empty());
        let n = s.normalize(&s.tes(vec![P1, S1]).unwrap()).unwrap();
        assert_eq!(n.result.terms(), &[S2, P1]);
        assert_eq!(n.word.to_string(), "φ₁");
        let path = s.transitivity_path(&s.tes(vec![S1, S2]).unwrap(), &s.tes(vec![P1, S1]).unwrap()).unwrap();
        assert_eq!(path.to_string(), "φ₁");
        let x = s.tes(vec![S1, S2]).unwrap();
        assert!(s.transitivity_path(&x, &x).unwrap().is_empty());
        assert!(matches!(s.transitivity_path(&x, &s.tes(vec![S2]).unwrap()), Err(Error::DifferentJ)));
    }

    #[test]
    fn complete_sequence_counts_and_graphs() {
        let s = seq_engine(2, false);
        let g = s.mutation_graph(s.whole(), IndSet::EMPTY).unwrap();
        assert_eq!(g.vertices.len(), 3);
        assert!(g.is_connected());
        let top = s.mutation_graph(s.whole(), s.whole().members).unwrap();
        assert_eq!(top.vertices.len(), 1);
        assert!(top.vertices[0].is_empty());
        let s = seq_engine(3, false);
        let g = s.mutation_graph(s.whole(), IndSet::EMPTY).unwrap();
        assert_eq!(g.vertices.len(), 16);
        assert!(g.is_connected());
    }

    #[test]
    fn parse_and_format() {
        let s = seq_engine(2, false);
        let c = s.catalog();
        assert_eq!(parse_sequence(c, "(S1, S2)").unwrap(), vec![S1, S2]);
        assert_eq!(parse_sequence(c, "11#1,10#1").unwrap(), vec![P1, S1]);
        assert_eq!(format_sequence(c, &[S1, S2]), "(10#1, 01#1)");
        assert!(parse_sequence(c, "()").unwrap().is_empty());
    }
}
