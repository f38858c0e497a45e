//! Exhaustive property suites over a certified catalogue.
//!
//! Every check counts the cases it looked at and keeps a readable certificate for each
//! failure (labels of the objects involved and the operation that went wrong).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ids::{IndId, IndSet, IndecObject, StrObject};
use crate::oracle::{torsion_classes, wide_subcategories, Oracle};
use crate::seq::{format_sequence, Op, SeqEngine, TauES};
use crate::tilt::{Engine, Wide};

/// Failures kept per check; the count is always exact.
const KEPT_FAILURES: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Bijections,
    Emap,
    Mutation,
    Transitivity,
    All,
}

impl Suite {
    pub fn includes(self, other: Suite) -> bool {
        self == Suite::All || self == other
    }
}

impl std::str::FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Suite> {
        match s {
            "bijections" => Ok(Suite::Bijections),
            "emap" => Ok(Suite::Emap),
            "mutation" => Ok(Suite::Mutation),
            "transitivity" => Ok(Suite::Transitivity),
            "all" => Ok(Suite::All),
            other => Err(Error::Parse(format!("unknown suite {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub suite: Suite,
    pub passed: usize,
    pub total: usize,
    pub failures: Vec<String>,
}

impl CheckResult {
    pub fn ok(&self) -> bool {
        self.passed == self.total
    }
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}/{} {}", self.name, self.passed, self.total, if self.ok() { "OK" } else { "FAILED" })
    }
}

struct Tally {
    result: CheckResult,
}

impl Tally {
    fn new(suite: Suite, name: &str) -> Tally {
        Tally { result: CheckResult { name: name.to_string(), suite, passed: 0, total: 0, failures: Vec::new() } }
    }

    fn record(&mut self, ok: bool, certificate: impl FnOnce() -> String) {
        self.result.total += 1;
        if ok {
            self.result.passed += 1;
        } else if self.result.failures.len() < KEPT_FAILURES {
            self.result.failures.push(certificate());
        }
    }

    fn check(&mut self, outcome: Result<bool>, certificate: impl FnOnce() -> String) {
        match outcome {
            Ok(ok) => self.record(ok, certificate),
            Err(e) => self.record(false, || format!("{}: {}", certificate(), e)),
        }
    }

    fn done(self) -> CheckResult {
        self.result
    }
}

/// Headline numbers for a report.
/// Outcome of perturbing memoized E-map values one at a time.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FaultReport {
    pub injected: usize,
    pub detected: usize,
    pub undetected: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counts {
    pub indecomposables: usize,
    pub tau_rigid: usize,
    pub torsion_classes: usize,
    pub wide_subcategories: usize,
    pub complete_sequences: usize,
}

pub struct Verifier {
    seq: Arc<SeqEngine>,
    oracle: Oracle,
    /// Bound on the catalogue size for the subset-enumerating oracles.
    pub subset_limit: usize,
}

fn set_of(ids: &[IndId]) -> IndSet {
    ids.iter().copied().collect()
}

impl Verifier {
    pub fn new(seq: Arc<SeqEngine>) -> Verifier {
        let oracle = Oracle::new(seq.engine().clone());
        Verifier { seq, oracle, subset_limit: 16 }
    }

    fn engine(&self) -> &Arc<Engine> {
        self.seq.engine()
    }

    fn lbl(&self, s: IndSet) -> String {
        self.engine().catalog().set_label(s)
    }

    fn obj(&self, x: IndecObject) -> String {
        self.engine().catalog().object_label(x)
    }

    fn str_lbl(&self, t: StrObject) -> String {
        self.engine().catalog().str_label(t)
    }

    fn seq_lbl(&self, x: &[IndId]) -> String {
        format_sequence(self.engine().catalog(), x)
    }

    /// Every `J(T)` for `T` support τ-rigid, sorted by members.
    pub fn perpendicular_categories(&self) -> Result<Vec<Wide>> {
        let e = self.engine();
        let mut out: BTreeMap<IndSet, Wide> = BTreeMap::new();
        for t in e.support_rigid_objects(e.whole()) {
            let j = e.j(e.whole(), t)?;
            out.insert(j.members, j);
        }
        Ok(out.into_values().collect())
    }

    pub fn counts(&self) -> Result<Counts> {
        let e = self.engine();
        let c = e.catalog();
        let tilting = e.support_rigid_objects(e.whole()).into_iter().filter(|t| t.summand_count() == c.rank()).count();
        Ok(Counts {
            indecomposables: c.len(),
            tau_rigid: c.tau_rigid().len(),
            torsion_classes: tilting,
            wide_subcategories: self.perpendicular_categories()?.len(),
            complete_sequences: self.seq.complete_sequences()?.len(),
        })
    }

    pub fn run(&self, suite: Suite) -> Result<Vec<CheckResult>> {
        let mut out = Vec::new();
        if suite.includes(Suite::Bijections) {
            out.push(self.torsion_bijections()?);
            out.push(self.wide_are_perpendicular()?);
            out.push(self.rigid_uniqueness());
            out.push(self.projective_bijection()?);
            out.push(self.relative_tau_oracle()?);
            out.push(self.omega_round_trips()?);
            out.push(self.sequence_j()?);
            out.push(self.filtgen_bridge()?);
            out.push(self.pair_uniqueness()?);
            out.push(self.tf_uniqueness()?);
            out.push(self.gen_minimal_characterization());
        }
        if suite.includes(Suite::Emap) {
            out.push(self.emap_bijection()?);
            out.push(self.emap_composition());
            out.push(self.j_sum());
            out.push(self.gen_pass_down());
            out.push(self.perp_tau_decomposition()?);
        }
        if suite.includes(Suite::Mutation) {
            out.push(self.mutation_steps()?);
            out.push(self.irregular_census()?);
            out.push(self.corank_two()?);
        }
        if suite.includes(Suite::Transitivity) {
            out.push(self.sequence_count()?);
            out.push(self.gen_minimal_representatives()?);
            out.push(self.connectivity()?);
            out.push(self.normalization()?);
            out.push(self.paths()?);
            out.push(self.transpositions()?);
            out.push(self.serre_psi_chains()?);
        }
        Ok(out)
    }

    /// Replace each memoized `E^W_T(X)` by a wrong value, rerun the E-map suite and
    /// record whether some check fails. The wrong value is the next object of `J_W(T)`
    /// after the true one, or an object outside `J_W(T)` when that category has one object.
    pub fn fault_campaign(&self) -> Result<FaultReport> {
        let e = self.engine();
        self.run(Suite::Emap)?;
        let entries = e.memoized_emap();
        let mut report = FaultReport { injected: 0, detected: 0, undetected: Vec::new() };
        for ((w, t, x), y) in entries {
            let jt = e.j(e.wide(w), t)?;
            let codomain = e.str_indecomposables(jt);
            let wrong = if codomain.len() > 1 {
                let at = codomain.iter().position(|&c| c == y).unwrap_or(0);
                codomain[(at + 1) % codomain.len()]
            } else {
                match e.catalog().ids().find(|&i| !jt.contains(i)) {
                    Some(i) => IndecObject::Module(i),
                    None => continue,
                }
            };
            e.inject_emap_fault(w, t, x, wrong);
            let caught = self.run(Suite::Emap).map(|rs| rs.iter().any(|r| !r.ok())).unwrap_or(true);
            e.clear_faults();
            report.injected += 1;
            if caught {
                report.detected += 1;
            } else {
                report.undetected.push(format!(
                    "W = {}, T = {}: E_T({}) forced to {}",
                    self.lbl(w),
                    self.str_lbl(t),
                    self.obj(x),
                    self.obj(wrong)
                ));
            }
        }
        Ok(report)
    }

    // ---- bijections --------------------------------------------------------------------

    fn torsion_bijections(&self) -> Result<CheckResult> {
        let e = self.engine();
        let c = e.catalog();
        let mut t = Tally::new(Suite::Bijections, "torsion classes, wide subcategories and gen-minimal modules");
        let torsion: BTreeSet<IndSet> = torsion_classes(c, self.subset_limit)?.into_iter().collect();
        let wides: BTreeSet<IndSet> = wide_subcategories(c, self.subset_limit)?.into_iter().collect();
        let to_wide = |tc: IndSet| -> Result<IndSet> {
            let cls = e.torsion_class(e.whole(), tc);
            Ok(e.j_category(StrObject::new(cls.nonsplit_proj, cls.p_t))?.members)
        };
        for m in e.rigid_modules(e.whole()) {
            let minimal = self.seq.is_gen_minimal(m).unwrap_or(false);
            if !minimal {
                continue;
            }
            let g = e.gen(m);
            t.record(torsion.contains(&g) && e.split_proj(g) == m, || {
                format!("M = {}: Gen M = {} is not a torsion class with P_s = M", self.lbl(m), self.lbl(g))
            });
            t.check(to_wide(g).map(|w| e.split_proj(e.filtgen(w)) == m && wides.contains(&w)), || {
                format!("M = {}: M → W → P_s(T(W)) does not return M", self.lbl(m))
            });
        }
        for &tc in &torsion {
            let ps = e.split_proj(tc);
            t.record(e.gen(ps) == tc && self.seq.is_gen_minimal(ps).unwrap_or(false), || {
                format!("T = {}: P_s(T) = {} is not gen-minimal with Gen = T", self.lbl(tc), self.lbl(ps))
            });
            t.check(to_wide(tc).map(|w| e.filtgen(w) == tc), || format!("T = {}: T(J(T)) ≠ T", self.lbl(tc)));
        }
        for &w in &wides {
            let tw = e.filtgen(w);
            t.check(to_wide(tw).map(|back| torsion.contains(&tw) && back == w), || {
                format!("W = {}: J of T(W) = {} is not W", self.lbl(w), self.lbl(tw))
            });
            let m = e.split_proj(tw);
            t.check(to_wide(e.gen(m)).map(|back| back == w), || {
                format!("W = {}: W → P_s(T(W)) = {} → W fails", self.lbl(w), self.lbl(m))
            });
        }
        Ok(t.done())
    }

    fn wide_are_perpendicular(&self) -> Result<CheckResult> {
        let e = self.engine();
        let mut t = Tally::new(Suite::Bijections, "wide subcategories are τ-perpendicular with rank n − δ");
        let wides: BTreeSet<IndSet> = wide_subcategories(e.catalog(), self.subset_limit)?.into_iter().collect();
        let perps: BTreeSet<IndSet> = self.perpendicular_categories()?.into_iter().map(|w| w.members).collect();
        for w in wides.union(&perps) {
            t.record(wides.contains(w) && perps.contains(w), || {
                format!(
                    "{} is wide by brute force: {}, τ-perpendicular: {}",
                    self.lbl(*w),
                    wides.contains(w),
                    perps.contains(w)
                )
            });
        }
        for s in e.support_rigid_objects(e.whole()) {
            t.check(e.j(e.whole(), s).map(|_| true), || format!("rank of J({})", self.str_lbl(s)));
        }
        Ok(t.done())
    }

    fn rigid_uniqueness(&self) -> CheckResult {
        let e = self.engine();
        let mut t = Tally::new(Suite::Bijections, "rigid uniqueness: any two of Gen, ⊥τ, J agree imply the third");
        let rigid = e.rigid_modules(e.whole());
        for &m in &rigid {
            for &n in &rigid {
                let c1 = e.gen(m) == e.gen(n);
                let c2 = e.perp_tau(m) == e.perp_tau(n);
                let j = |s| e.j_category(StrObject::module(s)).map(|w| w.members);
                let c3 = match (j(m), j(n)) {
                    (Ok(a), Ok(b)) => a == b,
                    _ => false,
                };
                let agree = [c1, c2, c3].iter().filter(|&&b| b).count();
                t.record(agree != 2 && ((agree == 3) == (m == n)), || {
                    format!("M = {}, N = {}: Gen {c1}, ⊥τ {c2}, J {c3}", self.lbl(m), self.lbl(n))
                });
            }
        }
        t.done()
    }

    fn projective_bijection(&self) -> Result<CheckResult> {
        let e = self.engine();
        let mut t = Tally::new(Suite::Bijections, "f_M maps P(⊥τM) minus add M onto P(J(M))");
        for m in e.rigid_modules(e.whole()) {
            let jm = e.j_category(StrObject::module(m))?;
            let sources = e.ext_proj(e.perp_tau(m)).minus(m);
            let mut images = IndSet::EMPTY;
            let mut ok = true;
            for q in sources.iter() {
                match e.quotient(m, q).as_slice() {
                    [(r, 1)] if jm.rel_proj.contains(*r) && !images.contains(*r) => images = images.with(*r),
                    _ => ok = false,
                }
            }
            t.record(ok && images == jm.rel_proj, || {
                format!(
                    "M = {}: f_M on {} gives {}, expected {}",
                    self.lbl(m),
                    self.lbl(sources),
                    self.lbl(images),
                    self.lbl(jm.rel_proj)
                )
            });
        }
        Ok(t.done())
    }

    fn relative_tau_oracle(&self) -> Result<CheckResult> {
        let e = self.engine();
        let mut t = Tally::new(Suite::Bijections, "relative τ-rigidity and ⊥τ_W against relative presentations");
        for w in self.perpendicular_categories()? {
            let ow = self.oracle.wide(w.members);
            t.record(ow.rel_proj == w.rel_proj, || format!("relative projectives of {}", self.lbl(w.members)));
            for x in w.members.iter() {
                let m = IndSet::single(x);
                t.check(self.oracle.is_rigid_w(ow, m).map(|r| r == e.rigid_in(w, m)), || {
                    format!("rigidity of {} in {}", self.lbl(m), self.lbl(w.members))
                });
                t.check(self.oracle.perp_tau_w(ow, m).map(|p| p == e.perp_tau_in(w, m)), || {
                    format!("⊥τ_W {} in {}", self.lbl(m), self.lbl(w.members))
                });
                for y in w.members.iter().filter(|&y| y > x) {
                    let m = m.with(y);
                    t.check(self.oracle.is_rigid_w(ow, m).map(|r| r == e.rigid_in(w, m)), || {
                        format!("rigidity of {} in {}", self.lbl(m), self.lbl(w.members))
                    });
                }
            }
        }
        Ok(t.done())
    }

    fn omega_round_trips(&self) -> Result<CheckResult> {
        let e = self.engine();
        let s = &self.seq;
        let w = e.whole();
        let mut t = Tally::new(Suite::Bijections, "ω and ω⁻¹ are inverse bijections");
        for m in e.rigid_modules(w) {
            for ys in s.tf_orderings(m) {
                let back = s.omega(w, &ys).and_then(|x| s.omega_inverse(&x));
                t.check(back.map(|b| b == ys), || format!("ω⁻¹ω{}", self.seq_lbl(&ys)));
            }
        }
        for x in s.all_sequences(w)? {
            let back = s.omega_inverse(&x).and_then(|ys| s.omega(w, &ys));
            t.check(back.map(|b| b == x), || format!("ωω⁻¹{}", self.seq_lbl(x.terms())));
        }
        Ok(t.done())
    }

    fn sequence_j(&self) -> Result<CheckResult> {
        let mut t = Tally::new(Suite::Bijections, "J(𝒳) = J(⊕ω⁻¹𝒳)");
        for x in self.seq.all_sequences(self.engine().whole())? {
            t.check(self.seq.j_of_sequence(&x).map(|_| true), || format!("J{}", self.seq_lbl(x.terms())));
        }
        Ok(t.done())
    }

    fn filtgen_bridge(&self) -> Result<CheckResult> {
        let e = self.engine();
        let mut t = Tally::new(Suite::Bijections, "FiltGen(𝒳) = Gen(⊕ω⁻¹𝒳)");
        for x in self.seq.all_sequences(e.whole())? {
            let lhs = e.filtgen(x.set());
            t.check(self.seq.omega_inverse(&x).map(|ys| e.gen(set_of(&ys)) == lhs), || {
                format!("𝒳 = {}: FiltGen = {}", self.seq_lbl(x.terms()), self.lbl(lhs))
            });
        }
        Ok(t.done())
    }

    fn pair_uniqueness(&self) -> Result<CheckResult> {
        let mut t = Tally::new(Suite::Bijections, "pairs with equal J: X = X′ iff Y = Y′");
        for v in self.perpendicular_categories()? {
            for (w, pairs) in self.seq.pairs_by_j(v)?.iter() {
                for &(x, y) in pairs {
                    for &(x2, y2) in pairs {
                        t.record((x == x2) == (y == y2), || {
                            format!(
                                "in {} with J = {}: {} and {}",
                                self.lbl(v.members),
                                self.lbl(*w),
                                self.seq_lbl(&[x, y]),
                                self.seq_lbl(&[x2, y2])
                            )
                        });
                    }
                }
            }
        }
        Ok(t.done())
    }

    fn tf_uniqueness(&self) -> Result<CheckResult> {
        let e = self.engine();
        let mut t = Tally::new(Suite::Bijections, "TF-ordered (X, Y), (Z, Y) with equal J have X = Z");
        let mut groups: BTreeMap<(IndId, IndSet), Vec<IndId>> = BTreeMap::new();
        for m in e.rigid_modules(e.whole()).into_iter().filter(|m| m.len() == 2) {
            let j = e.j_category(StrObject::module(m))?.members;
            for ys in self.seq.tf_orderings(m) {
                groups.entry((ys[1], j)).or_default().push(ys[0]);
            }
        }
        for ((y, j), xs) in groups {
            t.record(xs.len() == 1, || {
                format!("Y = {}, J = {}: X in {}", self.lbl(IndSet::single(y)), self.lbl(j), self.lbl(set_of(&xs)))
            });
        }
        Ok(t.done())
    }

    fn gen_minimal_characterization(&self) -> CheckResult {
        let e = self.engine();
        let mut t = Tally::new(Suite::Bijections, "gen-minimal iff M = P_s(⊥J(M))");
        for m in e.rigid_modules(e.whole()) {
            t.check(self.seq.is_gen_minimal(m).map(|_| true), || format!("M = {}", self.lbl(m)));
        }
        t.done()
    }

    // ---- E-map -------------------------------------------------------------------------

    fn emap_bijection(&self) -> Result<CheckResult> {
        let e = self.engine();
        let mut t = Tally::new(Suite::Emap, "E^W_T is a bijection onto the objects of J_W(T)");
        for w in self.perpendicular_categories()? {
            let domain_all = e.str_indecomposables(w);
            for tt in e.support_rigid_objects(w) {
                let jt = match e.j(w, tt) {
                    Ok(j) => j,
                    Err(err) => {
                        t.record(false, || format!("J_{}({}): {}", self.lbl(w.members), self.str_lbl(tt), err));
                        continue;
                    }
                };
                let codomain: BTreeSet<IndecObject> = e.str_indecomposables(jt).into_iter().collect();
                let mut images = BTreeSet::new();
                for &x in domain_all.iter().filter(|&&x| e.is_compatible(w, tt, x)) {
                    let r = e.e_map(w, tt, x);
                    let ok = matches!(r, Ok(y) if codomain.contains(&y) && images.insert(y));
                    t.record(ok, || {
                        format!(
                            "W = {}, T = {}: E_T({}) = {} is not a fresh object of J(T)",
                            self.lbl(w.members),
                            self.str_lbl(tt),
                            self.obj(x),
                            r.map(|y| self.obj(y)).unwrap_or_else(|err| err.to_string())
                        )
                    });
                }
                t.record(images.len() == codomain.len(), || {
                    format!(
                        "W = {}, T = {}: E_T misses {} objects of J(T)",
                        self.lbl(w.members),
                        self.str_lbl(tt),
                        codomain.len() - images.len()
                    )
                });
            }
        }
        Ok(t.done())
    }

    fn emap_composition(&self) -> CheckResult {
        let e = self.engine();
        let w = e.whole();
        let mut t = Tally::new(Suite::Emap, "E_{Y⊕Z}(X) = E^{J(Z)}_{E_Z(Y)}(E_Z(X))");
        let objects = e.str_indecomposables(w);
        for z in e.support_rigid_objects(w) {
            for &y in objects.iter().filter(|&&y| e.is_compatible(w, z, y)) {
                let zy = z.with(y);
                for &x in objects.iter().filter(|&&x| e.is_compatible(w, zy, x)) {
                    let run = || -> Result<bool> {
                        let lhs = e.e_map(w, zy, x)?;
                        let jz = e.j(w, z)?;
                        let rhs = e.e_map(jz, StrObject::of(e.e_map(w, z, y)?), e.e_map(w, z, x)?)?;
                        Ok(lhs == rhs)
                    };
                    t.check(run(), || format!("X = {}, Y = {}, Z = {}", self.obj(x), self.obj(y), self.str_lbl(z)));
                }
            }
        }
        t.done()
    }

    fn j_sum(&self) -> CheckResult {
        let e = self.engine();
        let w = e.whole();
        let mut t = Tally::new(Suite::Emap, "J(X ⊕ Y) = J_{J(Y)}(E_Y(X))");
        let objects = e.str_indecomposables(w);
        for y in e.support_rigid_objects(w) {
            for &x in objects.iter().filter(|&&x| e.is_compatible(w, y, x)) {
                let run = || -> Result<bool> {
                    let lhs = e.j(w, y.with(x))?;
                    let rhs = e.j(e.j(w, y)?, StrObject::of(e.e_map(w, y, x)?))?;
                    Ok(lhs.members == rhs.members)
                };
                t.check(run(), || format!("X = {}, Y = {}", self.obj(x), self.str_lbl(y)));
            }
        }
        t.done()
    }

    fn gen_pass_down(&self) -> CheckResult {
        let e = self.engine();
        let w = e.whole();
        let mut t = Tally::new(Suite::Emap, "X ∈ Gen(Y ⊕ Z) passes down to E_Z X ∈ Gen E_Z Y");
        for m in e.rigid_modules(w) {
            for x in m.iter() {
                for y in m.iter().filter(|&y| y != x) {
                    let z = m.without(x).without(y);
                    let gz = e.gen(z);
                    if gz.contains(x) || gz.contains(y) || !e.gen(z.with(y)).contains(x) {
                        continue;
                    }
                    let run = || -> Result<bool> {
                        let ex = e.e_map(w, StrObject::module(z), IndecObject::Module(x))?;
                        let ey = e.e_map(w, StrObject::module(z), IndecObject::Module(y))?;
                        Ok(match (ex, ey) {
                            (IndecObject::Module(a), IndecObject::Module(b)) => e.gen(IndSet::single(b)).contains(a),
                            _ => false,
                        })
                    };
                    t.check(run(), || {
                        format!(
                            "X = {}, Y = {}, Z = {}",
                            self.lbl(IndSet::single(x)),
                            self.lbl(IndSet::single(y)),
                            self.lbl(z)
                        )
                    });
                }
            }
        }
        t.done()
    }

    fn perp_tau_decomposition(&self) -> Result<CheckResult> {
        let e = self.engine();
        let c = e.catalog();
        let mut t = Tally::new(Suite::Emap, "⊥τM = Gen M * J(M) and ⊥τM ∩ ⊥J(M) = Gen M");
        for m in e.rigid_modules(e.whole()) {
            let jm = e.j_category(StrObject::module(m))?.members;
            let perp = e.perp_tau(m);
            for x in c.ids() {
                let free_part_in_j = e.quotient(m, x).iter().all(|(p, _)| jm.contains(*p));
                t.record(perp.contains(x) == free_part_in_j, || {
                    format!(
                        "M = {}, X = {}: in ⊥τM {}, f_M X in J(M) {}",
                        self.lbl(m),
                        c.label(x),
                        perp.contains(x),
                        free_part_in_j
                    )
                });
            }
            t.record(perp.intersect(e.left_perp(jm)) == e.gen(m), || {
                format!("M = {}: ⊥τM ∩ ⊥J(M) ≠ Gen M", self.lbl(m))
            });
        }
        Ok(t.done())
    }

    // ---- mutation ----------------------------------------------------------------------

    fn mutation_steps(&self) -> Result<CheckResult> {
        let s = &self.seq;
        let mut t = Tally::new(Suite::Mutation, "φ_i and ψ_i preserve J and invert each other");
        for x in s.all_sequences(self.engine().whole())? {
            for i in x.indices() {
                for op in [Op::Phi, Op::Psi] {
                    let run = || -> Result<bool> {
                        let y = s.mutate(&x, op, i)?;
                        let back = s.mutate(&y, op.inverse(), i)?;
                        let p = i - x.first_index();
                        let same_outside =
                            (0..x.len()).filter(|&q| q != p && q != p + 1).all(|q| x.terms()[q] == y.terms()[q]);
                        Ok(back == x && same_outside && s.j_of_sequence(&y)?.members == s.j_of_sequence(&x)?.members)
                    };
                    t.check(run(), || format!("{}{} on {}", op.symbol(), i, self.seq_lbl(x.terms())));
                }
            }
        }
        Ok(t.done())
    }

    fn irregular_census(&self) -> Result<CheckResult> {
        let mut t = Tally::new(Suite::Mutation, "at most one left- and one right-irregular pair per context");
        for v in self.perpendicular_categories()? {
            for w in self.seq.pairs_by_j(v)?.keys() {
                let table = self.seq.pair_table(v, *w);
                let ok = table.map(|tb| tb.left_irregular.len() <= 1 && tb.right_irregular.len() <= 1);
                t.check(ok, || format!("context {}, J = {}", self.lbl(v.members), self.lbl(*w)));
            }
        }
        Ok(t.done())
    }

    fn corank_two(&self) -> Result<CheckResult> {
        let e = self.engine();
        let n = e.rank();
        let mut t = Tally::new(Suite::Mutation, "corank-2 W: P_s(⊥W) = U ⊕ V, gen-minimal, with J = W");
        for w in self.perpendicular_categories()?.into_iter().filter(|w| w.rank() + 2 == n) {
            let uv = e.split_proj(e.left_perp(w.members));
            let run = || -> Result<bool> {
                Ok(uv.len() == 2
                    && e.rigid_in(e.whole(), uv)
                    && e.j_category(StrObject::module(uv))?.members == w.members
                    && self.seq.is_gen_minimal(uv)?)
            };
            t.check(run(), || format!("W = {}: P_s(⊥W) = {}", self.lbl(w.members), self.lbl(uv)));
        }
        Ok(t.done())
    }

    // ---- transitivity ------------------------------------------------------------------

    fn sequence_count(&self) -> Result<CheckResult> {
        let mut t = Tally::new(Suite::Transitivity, "complete sequences match the recursive enumeration");
        let ours: BTreeSet<Vec<IndId>> = self.seq.complete_sequences()?.iter().map(|x| x.terms().to_vec()).collect();
        let theirs: BTreeSet<Vec<IndId>> = self.oracle.complete_sequences()?.into_iter().collect();
        for x in ours.symmetric_difference(&theirs) {
            t.record(false, || format!("{} found by only one enumeration", self.seq_lbl(x)));
        }
        for _ in ours.intersection(&theirs) {
            t.record(true, String::new);
        }
        Ok(t.done())
    }

    fn gen_minimal_representatives(&self) -> Result<CheckResult> {
        let mut t = Tally::new(Suite::Transitivity, "exactly one gen-minimal ω⁻¹-sum per τ-es(W)");
        let whole = self.engine().whole();
        for w in self.perpendicular_categories()? {
            let mut sums = BTreeSet::new();
            for x in self.seq.sequences_with_j(whole, w.members)? {
                let m = set_of(&self.seq.omega_inverse(&x)?);
                if self.seq.is_gen_minimal(m)? {
                    sums.insert(m);
                }
            }
            t.record(sums.len() == 1, || {
                format!(
                    "W = {}: gen-minimal sums {:?}",
                    self.lbl(w.members),
                    sums.iter().map(|m| self.lbl(*m)).collect::<Vec<_>>()
                )
            });
        }
        Ok(t.done())
    }

    fn connectivity(&self) -> Result<CheckResult> {
        let mut t = Tally::new(Suite::Transitivity, "mutation graph of every τ-es(W) is connected (BFS)");
        let whole = self.engine().whole();
        for w in self.perpendicular_categories()? {
            let g = self.seq.mutation_graph(whole, w.members);
            t.check(g.map(|g| g.is_connected()), || format!("W = {}", self.lbl(w.members)));
        }
        Ok(t.done())
    }

    fn normalization(&self) -> Result<CheckResult> {
        let e = self.engine();
        let bound = self.counts()?.torsion_classes;
        let mut t =
            Tally::new(Suite::Transitivity, "normalize strictly enlarges FiltGen and stops within #torsion classes");
        for x in self.seq.complete_sequences()? {
            let run = || -> Result<bool> {
                let n = self.seq.normalize(&x)?;
                let strict = n.filtgen_chain.windows(2).all(|w| w[0].is_subset(w[1]) && w[0] != w[1]);
                let minimal = self.seq.is_gen_minimal(set_of(&self.seq.omega_inverse(&n.result)?))?;
                let torsion = n.filtgen_chain.iter().all(|&f| e.filtgen(f) == f);
                Ok(strict && minimal && torsion && n.phi_steps() <= bound)
            };
            t.check(run(), || format!("normalize{}", self.seq_lbl(x.terms())));
        }
        Ok(t.done())
    }

    fn paths(&self) -> Result<CheckResult> {
        let mut t = Tally::new(Suite::Transitivity, "normalize-based words connect all ordered pairs");
        let whole = self.engine().whole();
        let g = self.seq.mutation_graph(whole, IndSet::EMPTY)?;
        for (a, x) in g.vertices.iter().enumerate() {
            let dist = g.distances(a);
            for (b, y) in g.vertices.iter().enumerate() {
                let run = || -> Result<bool> {
                    let w = self.seq.transitivity_path(x, y)?;
                    Ok(&self.seq.apply(x, &w.steps)? == y && dist[b].is_some_and(|d| d <= w.len()))
                };
                t.check(run(), || format!("{} → {}", self.seq_lbl(x.terms()), self.seq_lbl(y.terms())));
            }
        }
        Ok(t.done())
    }

    fn transpositions(&self) -> Result<CheckResult> {
        let e = self.engine();
        let s = &self.seq;
        let whole = e.whole();
        let mut t = Tally::new(Suite::Transitivity, "transposition words exist with |ℓ| ≤ |S_W|");
        for m in e.rigid_modules(whole) {
            let orders = s.tf_orderings(m);
            for ys in &orders {
                for p in 0..ys.len().saturating_sub(1) {
                    let mut swapped = ys.clone();
                    swapped.swap(p, p + 1);
                    if !orders.contains(&swapped) {
                        continue;
                    }
                    let run = || -> Result<bool> {
                        let x = s.omega(whole, ys)?;
                        let word = s.transposition_word(whole, ys, &swapped)?;
                        let ctx = x.context_of(p + 1);
                        let w = s.sequence(ctx, vec![x.terms()[p], x.terms()[p + 1]])?.j().members;
                        Ok(word.len() <= s.pair_table(ctx, w)?.pairs.len()
                            && word.target == s.omega(whole, &swapped)?)
                    };
                    t.check(run(), || format!("{} ↔ {}", self.seq_lbl(ys), self.seq_lbl(&swapped)));
                }
            }
        }
        Ok(t.done())
    }

    /// For each Serre `W` of corank 2 with `P_s(⊥W) = U ⊕ V`, iterate
    /// `(V_ℓ, U_ℓ) = ω⁻¹(ψ^ℓ(ω(V, U)))` and check the strict chain `Gen U_{ℓ+1} ⊊ Gen U_ℓ`
    /// until `U_ℓ = V`, where also `V_ℓ = U`.
    fn serre_psi_chains(&self) -> Result<CheckResult> {
        let e = self.engine();
        let s = &self.seq;
        let whole = e.whole();
        let n = e.rank();
        let mut t = Tally::new(Suite::Transitivity, "Serre corank-2 ψ-iteration descends until U_ℓ = V");
        for w in self.perpendicular_categories()?.into_iter().filter(|w| w.rank() + 2 == n) {
            let uv = e.split_proj(e.left_perp(w.members));
            if !uv.is_subset(e.catalog().projectives()) || uv.len() != 2 {
                continue;
            }
            let ids: Vec<IndId> = uv.iter().collect();
            for (u, v) in [(ids[0], ids[1]), (ids[1], ids[0])] {
                let run = || -> Result<bool> {
                    let mut x: TauES = s.omega(whole, &[v, u])?;
                    let i = x.first_index();
                    let mut cur_u = u;
                    for _ in 0..s.pair_table(x.context_of(1), w.members)?.pairs.len() {
                        x = s.mutate(&x, Op::Psi, i)?;
                        let ys = s.omega_inverse(&x)?;
                        let (vl, ul) = (ys[0], ys[1]);
                        if ul == v {
                            return Ok(vl == u);
                        }
                        let (g_new, g_old) = (e.gen(IndSet::single(ul)), e.gen(IndSet::single(cur_u)));
                        if !(g_new.is_subset(g_old) && g_new != g_old) || vl != cur_u {
                            return Ok(false);
                        }
                        cur_u = ul;
                    }
                    Ok(false)
                };
                t.check(run(), || {
                    format!(
                        "W = {}, U = {}, V = {}",
                        self.lbl(w.members),
                        self.lbl(IndSet::single(u)),
                        self.lbl(IndSet::single(v))
                    )
                });
            }
        }
        Ok(t.done())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::Catalog;
    use crate::quiver::{AlgebraDescription, BoundQuiverAlgebra};

    fn verifier(n: usize, rad2: bool) -> Verifier {
        let alg = BoundQuiverAlgebra::build(&AlgebraDescription::linear(n, rad2)).unwrap();
        let cat = Arc::new(Catalog::build(&alg, None).unwrap());
        Verifier::new(Arc::new(SeqEngine::new(Arc::new(Engine::new(cat).unwrap()))))
    }

    #[test]
    fn a2_all_suites_pass() {
        let v = verifier(2, false);
        let results = v.run(Suite::All).unwrap();
        for r in &results {
            assert!(r.ok(), "{r}: {:?}", r.failures);
            assert!(r.total > 0 || r.name.starts_with("Serre") || r.name.starts_with("corank"), "{r}");
        }
        let c = v.counts().unwrap();
        assert_eq!((c.indecomposables, c.torsion_classes, c.complete_sequences), (3, 5, 3));
    }
}
