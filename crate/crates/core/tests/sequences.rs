use std::sync::Arc;

use tauex::catalog::Catalog;
use tauex::ids::IndSet;
use tauex::quiver::{AlgebraDescription, BoundQuiverAlgebra};
use tauex::seq::{Op, SeqEngine};
use tauex::tilt::Engine;

fn seq_engine(n: usize, rad2: bool) -> SeqEngine {
    let alg = BoundQuiverAlgebra::build(&AlgebraDescription::linear(n, rad2)).unwrap();
    let cat = Arc::new(Catalog::build(&alg, None).unwrap());
    SeqEngine::new(Arc::new(Engine::new(cat).unwrap()))
}

#[test]
fn a3_all_pairs_connected_by_paths() {
    let s = seq_engine(3, false);
    let all = s.complete_sequences().unwrap();
    assert_eq!(all.len(), 16);
    let g = s.mutation_graph(s.whole(), IndSet::EMPTY).unwrap();
    let mut longest = 0;
    for (a, x) in all.iter().enumerate() {
        let dist = g.distances(a);
        for (b, y) in all.iter().enumerate() {
            let w = s.transitivity_path(x, y).unwrap();
            assert_eq!(&w.target, y);
            assert!(w.len() >= dist[b].unwrap());
            longest = longest.max(w.len());
        }
    }
    assert!(longest > 0);
}

#[test]
fn a3_normalize_strictly_increases_filtgen() {
    let s = seq_engine(3, false);
    for x in s.complete_sequences().unwrap() {
        let n = s.normalize(&x).unwrap();
        assert!(n.phi_steps() <= 14);
        for w in n.filtgen_chain.windows(2) {
            assert!(w[0].is_subset(w[1]) && w[0] != w[1]);
        }
        let ys = s.omega_inverse(&n.result).unwrap();
        assert!(s.is_gen_minimal(ys.iter().copied().collect()).unwrap());
    }
}

#[test]
fn mutation_is_invertible_and_preserves_j() {
    for (n, rad2) in [(2, false), (3, false), (3, true)] {
        let s = seq_engine(n, rad2);
        for x in s.all_sequences(s.whole()).unwrap() {
            let j = s.j_of_sequence(&x).unwrap();
            for i in x.indices() {
                for op in [Op::Phi, Op::Psi] {
                    let y = s.mutate(&x, op, i).unwrap();
                    assert_eq!(s.j_of_sequence(&y).unwrap(), j);
                    assert_eq!(s.mutate(&y, op.inverse(), i).unwrap(), x);
                    let p = i - x.first_index();
                    for q in (0..x.len()).filter(|&q| q != p && q != p + 1) {
                        assert_eq!(x.terms()[q], y.terms()[q]);
                    }
                }
            }
        }
    }
}

#[test]
fn rad_square_zero_graph_is_connected() {
    let s = seq_engine(3, true);
    let g = s.mutation_graph(s.whole(), IndSet::EMPTY).unwrap();
    assert!(!g.vertices.is_empty());
    assert!(g.is_connected());
    for x in &g.vertices {
        for y in &g.vertices {
            assert_eq!(&s.transitivity_path(x, y).unwrap().target, y);
        }
    }
}
