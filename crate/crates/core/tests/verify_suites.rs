use std::sync::Arc;
use std::time::Instant;

use tauex::catalog::Catalog;
use tauex::quiver::{AlgebraDescription, BoundQuiverAlgebra};
use tauex::seq::SeqEngine;
use tauex::tilt::Engine;
use tauex::verify::{Suite, Verifier};

fn verifier(n: usize, rad2: bool) -> Verifier {
    let alg = BoundQuiverAlgebra::build(&AlgebraDescription::linear(n, rad2)).unwrap();
    let cat = Arc::new(Catalog::build(&alg, None).unwrap());
    Verifier::new(Arc::new(SeqEngine::new(Arc::new(Engine::new(cat).unwrap()))))
}

fn all_pass(v: &Verifier) {
    let start = Instant::now();
    for r in v.run(Suite::All).unwrap() {
        eprintln!("{r}");
        assert!(r.ok(), "{r}: {:?}", r.failures);
    }
    eprintln!("elapsed {:?}", start.elapsed());
}

#[test]
fn a3_every_suite_passes() {
    let v = verifier(3, false);
    all_pass(&v);
    let c = v.counts().unwrap();
    assert_eq!((c.indecomposables, c.torsion_classes, c.wide_subcategories, c.complete_sequences), (6, 14, 14, 16));
}

#[test]
fn a3_radical_square_zero_every_suite_passes() {
    let v = verifier(3, true);
    all_pass(&v);
}

#[test]
fn every_emap_fault_is_detected() {
    for (n, rad2) in [(2, false), (3, false), (3, true)] {
        let v = verifier(n, rad2);
        let report = v.fault_campaign().unwrap();
        assert!(report.injected > 0);
        assert_eq!(report.detected, report.injected, "{:?}", report.undetected);
        assert!(v.run(Suite::Emap).unwrap().iter().all(|r| r.ok()), "faults were not cleared");
    }
}
