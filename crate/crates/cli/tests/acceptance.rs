use std::collections::BTreeSet;
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use tauex::catalog::Catalog;
use tauex::ids::IndSet;
use tauex::oracle::{torsion_classes, Oracle};
use tauex::quiver::{AlgebraDescription, BoundQuiverAlgebra};
use tauex::seq::{parse_sequence, Op, SeqEngine, TauES};
use tauex::tilt::Engine;
use tauex::verify::{CheckResult, Suite, Verifier};

const ALGEBRAS: [&str; 3] = ["a2", "a3", "a3_rad2"];

fn file(name: &str) -> String {
    format!("{}/../../algebras/{name}.toml", env!("CARGO_MANIFEST_DIR"))
}

fn load(name: &str) -> Arc<SeqEngine> {
    let text = std::fs::read_to_string(file(name)).expect("algebra file");
    let alg = BoundQuiverAlgebra::build(&AlgebraDescription::from_toml(&text).expect("parses")).expect("builds");
    let cat = Arc::new(Catalog::build(&alg, None).expect("enumerates"));
    Arc::new(SeqEngine::new(Arc::new(Engine::new(cat).expect("engine"))))
}

fn tauex(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_tauex")).args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned())
}

fn ensure(ok: bool, what: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t < limit, format!("took {t:?}, limit {limit:?}"))
}

fn failing(results: &[CheckResult], keep: impl Fn(&CheckResult) -> bool) -> Vec<String> {
    results.iter().filter(|r| keep(r) && !r.ok()).map(|r| format!("{r}: {:?}", r.failures.first())).collect()
}

fn seq_set(xs: &[TauES]) -> BTreeSet<Vec<tauex::ids::IndId>> {
    xs.iter().map(|x| x.terms().to_vec()).collect()
}

fn a2() -> Result<String, String> {
    let start = Instant::now();
    let s = load("a2");
    let c = s.catalog().clone();
    ensure(c.len() == 3, format!("{} indecomposables", c.len()))?;
    let complete = s.complete_sequences().map_err(|e| e.to_string())?;
    let expected: BTreeSet<_> =
        ["(S1,S2)", "(S2,P1)", "(P1,S1)"].iter().map(|t| parse_sequence(&c, t).expect("labels")).collect();
    ensure(seq_set(&complete) == expected, "complete sequences differ from (S1,S2), (S2,P1), (P1,S1)")?;
    let oracle: BTreeSet<_> =
        Oracle::new(s.engine().clone()).complete_sequences().map_err(|e| e.to_string())?.into_iter().collect();
    ensure(oracle == expected, "recursive enumerator disagrees")?;
    for x in &complete {
        let once = s.mutate(x, Op::Phi, 1).map_err(|e| e.to_string())?;
        let twice = s.mutate(&once, Op::Phi, 1).map_err(|e| e.to_string())?;
        let thrice = s.mutate(&twice, Op::Phi, 1).map_err(|e| e.to_string())?;
        ensure(&thrice == x && &once != x && &twice != x, "φ₁ is not a 3-cycle")?;
    }
    let g = s.mutation_graph(s.whole(), IndSet::EMPTY).map_err(|e| e.to_string())?;
    ensure(g.is_connected(), "mutation graph disconnected")?;
    let (code, out) = tauex(&["verify", &file("a2"), "--suite", "all"]);
    ensure(code == 0 && out.contains("5 torsion classes"), format!("verify exit {code}"))?;
    let (code, out) = tauex(&["tes", &file("a2"), "path", "--from", "(S1,S2)", "--to", "(P1,S1)"]);
    ensure(code == 0 && out.contains("word φ₁ ") && out.contains("applied: OK"), format!("path output {out:?}"))?;
    within(start, Duration::from_secs(1))?;
    Ok(format!(
        "3 indecomposables, 3 complete sequences, φ₁ 3-cycle, connected, verify all passes ({:?})",
        start.elapsed()
    ))
}

fn a3() -> Result<String, String> {
    let start = Instant::now();
    let s = load("a3");
    let e = s.engine();
    ensure(s.catalog().len() == 6, "indecomposable count")?;
    let torsion = torsion_classes(s.catalog(), 16).map_err(|e| e.to_string())?.len();
    ensure(torsion == 14, format!("{torsion} torsion classes"))?;
    let complete = s.complete_sequences().map_err(|e| e.to_string())?;
    let oracle: BTreeSet<_> =
        Oracle::new(e.clone()).complete_sequences().map_err(|e| e.to_string())?.into_iter().collect();
    ensure(complete.len() == 16 && seq_set(&complete) == oracle, format!("{} complete sequences", complete.len()))?;
    let g = s.mutation_graph(s.whole(), IndSet::EMPTY).map_err(|e| e.to_string())?;
    ensure(g.is_connected(), "BFS finds a disconnected graph")?;
    let mut pairs = 0;
    for x in &complete {
        for y in &complete {
            let w = s.transitivity_path(x, y).map_err(|e| e.to_string())?;
            ensure(&s.apply(x, &w.steps).map_err(|e| e.to_string())? == y, "word does not reach target")?;
            pairs += 1;
        }
        let n = s.normalize(x).map_err(|e| e.to_string())?;
        let strict = n.filtgen_chain.windows(2).all(|w| w[0].is_subset(w[1]) && w[0] != w[1]);
        ensure(strict && n.phi_steps() <= 14, "normalize did not strictly increase FiltGen within 14 steps")?;
    }
    within(start, Duration::from_secs(30))?;
    Ok(format!(
        "14 torsion classes, 16 complete sequences, BFS connected, {pairs} ordered pairs joined ({:?})",
        start.elapsed()
    ))
}

fn a3_rad2() -> Result<String, String> {
    let start = Instant::now();
    let s = load("a3_rad2");
    ensure(s.catalog().is_certified(), "enumeration not certified")?;
    let complete = s.complete_sequences().map_err(|e| e.to_string())?;
    let oracle: BTreeSet<_> =
        Oracle::new(s.engine().clone()).complete_sequences().map_err(|e| e.to_string())?.into_iter().collect();
    ensure(seq_set(&complete) == oracle, "recursive enumerator disagrees")?;
    let g = s.mutation_graph(s.whole(), IndSet::EMPTY).map_err(|e| e.to_string())?;
    ensure(g.is_connected(), "mutation graph disconnected")?;
    within(start, Duration::from_secs(30))?;
    Ok(format!(
        "certified, {} complete sequences match the recursive enumerator, connected ({:?})",
        complete.len(),
        start.elapsed()
    ))
}

const STRUCTURAL: [&str; 2] = ["transposition", "Serre"];

fn property_suites() -> Result<String, String> {
    let mut checks = 0;
    for name in ALGEBRAS {
        let results = Verifier::new(load(name)).run(Suite::All).map_err(|e| e.to_string())?;
        let bad = failing(&results, |r| !STRUCTURAL.iter().any(|p| r.name.starts_with(p)));
        ensure(bad.is_empty(), format!("{name}: {bad:?}"))?;
        checks += results.iter().map(|r| r.total).sum::<usize>();
    }
    Ok(format!("bijection, E-map and mutation suites clean on A2, A3, A3 rad2 ({checks} cases)"))
}

fn transpositions_and_serre() -> Result<String, String> {
    let mut swaps = 0;
    let mut chains = 0;
    for name in ALGEBRAS {
        let results = Verifier::new(load(name)).run(Suite::Transitivity).map_err(|e| e.to_string())?;
        let bad = failing(&results, |r| STRUCTURAL.iter().any(|p| r.name.starts_with(p)));
        ensure(bad.is_empty(), format!("{name}: {bad:?}"))?;
        for r in &results {
            if r.name.starts_with("transposition") {
                swaps += r.total;
            } else if r.name.starts_with("Serre") {
                chains += r.total;
            }
        }
    }
    ensure(swaps > 0 && chains > 0, "nothing was checked")?;
    Ok(format!("{swaps} adjacent TF swaps within |S_W|, {chains} Serre ψ-chains strictly descending"))
}

fn fault_injection() -> Result<String, String> {
    let mut injected = 0;
    for name in ALGEBRAS {
        let v = Verifier::new(load(name));
        let report = v.fault_campaign().map_err(|e| e.to_string())?;
        ensure(
            report.injected > 0 && report.detected == report.injected,
            format!("{name}: undetected {:?}", report.undetected),
        )?;
        injected += report.injected;
    }
    Ok(format!("all {injected} single E-map faults caught by a named check"))
}

type Criterion = fn() -> Result<String, String>;

fn main() {
    let criteria: [(&str, Criterion); 6] = [
        ("A2 sequences, 3-cycle and verify", a2),
        ("A3 counts and transitivity", a3),
        ("A3 rad2 certified enumeration", a3_rad2),
        ("exhaustive property suites", property_suites),
        ("transposition words and Serre chains", transpositions_and_serre),
        ("fault injection", fault_injection),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
