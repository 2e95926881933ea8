use pstar::exact::exact_distribution;
use pstar::model::hamiltonian;
use pstar::sampler::{
    acceptance_prob, run_chain, run_chain_with, Chain, InitialState, SamplerConfig,
};
use pstar::{Graph, NaturalParams};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_graph(rng: &mut ChaCha8Rng, n: usize) -> Graph {
    let mut g = Graph::empty(n);
    for i in 0..n {
        for j in (i + 1)..n {
            if rng.random::<f64>() < 0.4 {
                g.toggle(i, j).unwrap();
            }
        }
    }
    g
}

#[test]
fn kernel_satisfies_detailed_balance() {
    let mut rng = ChaCha8Rng::seed_from_u64(30);
    for _ in 0..500 {
        let n = rng.random_range(3..20);
        let p = NaturalParams::new(
            rng.random_range(-3.0..3.0),
            rng.random_range(-0.5..0.5),
            rng.random_range(-1.0..1.0),
        );
        let h = p.to_hamiltonian().unwrap();
        let g = random_graph(&mut rng, n);
        let i = rng.random_range(0..n);
        let j = (i + rng.random_range(1..n)) % n;
        let (minus, plus) = if g.has_edge(i, j).unwrap() {
            (g.toggle_edge(i, j).unwrap(), g.clone())
        } else {
            (g.clone(), g.toggle_edge(i, j).unwrap())
        };
        let fwd = acceptance_prob(&p, &minus, i, j).unwrap();
        let bwd = acceptance_prob(&p, &plus, i, j).unwrap();
        // Shift energies by the smaller one to keep the exponentials finite.
        let (hm, hp) = (
            hamiltonian(&h, &minus.suff_stats()),
            hamiltonian(&h, &plus.suff_stats()),
        );
        let base = hm.min(hp);
        let lhs = fwd * (-(hm - base)).exp();
        let rhs = bwd * (-(hp - base)).exp();
        assert!((lhs - rhs).abs() <= 1e-12 * lhs.max(rhs), "{lhs} vs {rhs}");
    }
}

#[test]
fn uniform_model_gives_half_edge_frequency() {
    let cfg = SamplerConfig {
        thinning: 10,
        ..SamplerConfig::new(4, 50_000, 31)
    };
    let mut present = 0u64;
    run_chain_with(&NaturalParams::ZERO, &cfg, 0, |_, g, s| {
        present += s.edges;
        assert_eq!(g.suff_stats(), s);
    })
    .unwrap();
    let freq = present as f64 / (50_000.0 * 6.0);
    assert!((freq - 0.5).abs() < 0.01, "{freq}");
}

#[test]
fn stationary_distribution_matches_enumeration() {
    let p = NaturalParams::new(-0.5, 0.2, -0.3);
    let exact = exact_distribution(&p, 4).unwrap();
    let cfg = SamplerConfig::new(4, 400_000, 32);
    let mut counts = vec![0u64; 64];
    run_chain_with(&p, &cfg, 0, |_, g, _| counts[g.pair_mask() as usize] += 1).unwrap();
    let tv: f64 = 0.5
        * counts
            .iter()
            .zip(&exact)
            .map(|(&c, &e)| (c as f64 / 400_000.0 - e).abs())
            .sum::<f64>();
    assert!(tv < 0.02, "{tv}");
}

#[test]
fn running_stats_stay_exact() {
    let p = NaturalParams::new(-1.0, 0.05, 0.3);
    for (seed, init) in [
        (1, InitialState::Empty),
        (2, InitialState::Random(0.7)),
        (3, InitialState::Given(Graph::complete(12))),
    ] {
        let cfg = SamplerConfig {
            initial: init,
            ..SamplerConfig::new(12, 50, seed)
        };
        let mut chain = Chain::new(p, &cfg, 0).unwrap();
        for _ in 0..100 {
            chain.advance(97);
            assert_eq!(chain.stats(), chain.graph().suff_stats());
        }
    }
}

#[test]
fn samples_are_reproducible() {
    let p = NaturalParams::new(-1.6, -0.02, 0.2);
    let cfg = SamplerConfig::new(10, 100, 77);
    assert_eq!(run_chain(&p, &cfg).unwrap(), run_chain(&p, &cfg).unwrap());
    let other = SamplerConfig::new(10, 100, 78);
    assert_ne!(
        run_chain(&p, &cfg).unwrap().graphs,
        run_chain(&p, &other).unwrap().graphs
    );
}
