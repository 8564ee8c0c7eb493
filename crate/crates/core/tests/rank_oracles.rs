mod common;

use cayleyrank::corpus;
use cayleyrank::experiments::{random_cube_sweep, RandomCubeParams};
use cayleyrank::membership::closure;
use cayleyrank::rank::{
    ceil_log2, group_rank, lower_rank, quasigroup_cube_rank, rank_decision, ring_rank, verify_report, RankSearch,
    Witness,
};
use cayleyrank::variants::{check_chain, is_independent, rank_variant, RankVariant, VariantOutcome};
use cayleyrank::{Budget, ElementSet};
use common::*;
use proptest::prelude::*;

fn budget() -> Budget {
    Budget::default().unbounded_subsets()
}

#[test]
fn lower_rank_matches_unbounded_oracle() {
    for (name, t) in corpus::structure_corpus(12) {
        let r = lower_rank(&t, &budget()).unwrap();
        assert!(r.exact, "{name}");
        assert_eq!(r.rank, naive_rank(&t), "{name}");
        assert!(verify_report(&t, &r, 24));
    }
}

#[test]
fn rank_decision_matches_oracle_for_every_k() {
    for (name, t) in corpus::structure_corpus(8) {
        let rank = naive_rank(&t);
        for k in 0..=t.order() + 1 {
            let d = rank_decision(&t, k, &budget()).unwrap();
            assert_eq!(d.answer(), Some(rank <= k), "{name} k={k}");
        }
    }
}

#[test]
fn group_rank_respects_log_bound() {
    for (name, t) in corpus::group_corpus(16) {
        let r = group_rank(&t, &Budget::default()).unwrap();
        assert_eq!(r.rank, naive_rank(&t), "{name}");
        if t.order() >= 2 {
            assert!(r.rank <= ceil_log2(t.order()), "{name}");
        }
    }
}

#[test]
fn minimum_generating_sets_of_groups_are_independent() {
    for (name, t) in corpus::group_corpus(16) {
        let r = group_rank(&t, &Budget::default()).unwrap();
        let Witness::Set { elements } = &r.witness else { panic!("set witness expected") };
        assert!(is_independent(&t, elements), "{name} {elements:?}");
    }
}

#[test]
fn lower_variant_matches_rank_search() {
    for (name, t) in corpus::structure_corpus(10) {
        let r = lower_rank(&t, &budget()).unwrap();
        match rank_variant(&t, RankVariant::Lower, &Budget::default()).unwrap() {
            VariantOutcome::Value { value, .. } => assert_eq!(value, r.rank, "{name}"),
            other => panic!("{name}: {other:?}"),
        }
    }
}

/// Every variant from first principles on masks.
fn naive_chain(t: &cayleyrank::CayleyTable) -> (usize, usize, usize, usize, usize) {
    let n = t.order();
    let masks: Vec<u64> = (1..1u64 << n).collect();
    let gen = |m: u64| naive_generates(t, &mask_elements(m));
    let ind = |m: u64| {
        mask_elements(m)
            .iter()
            .all(|&x| !naive_closure(t, &mask_elements(m & !(1 << x)))[x])
    };
    let size = |m: &u64| m.count_ones() as usize;
    let lower = masks.iter().filter(|&&m| gen(m)).map(size).min().unwrap();
    let upper = masks.iter().filter(|&&m| ind(m)).map(size).max().unwrap_or(0);
    let inter = masks.iter().filter(|&&m| ind(m) && gen(m)).map(size).max().unwrap_or(0);
    let large = (1..=n)
        .find(|&k| masks.iter().filter(|m| size(m) == k).all(|&m| gen(m)))
        .unwrap();
    let small = (1..=n)
        .take_while(|&k| masks.iter().filter(|m| size(m) == k).all(|&m| ind(m)))
        .last()
        .unwrap_or(0);
    (small, lower, inter, upper, large)
}

#[test]
fn variants_match_naive_definitions() {
    for (name, t) in corpus::structure_corpus(7) {
        let c = check_chain(&t, &Budget::default()).unwrap();
        assert_eq!(c.as_tuple(), naive_chain(&t), "{name}");
        assert!(c.holds, "{name}");
    }
}

#[test]
fn cube_witnesses_give_generating_sets() {
    for (name, t) in corpus::quasigroup_corpus(8) {
        let RankSearch::Found(r) = quasigroup_cube_rank(&t, 8, 0, 0, &Budget::default()).unwrap() else {
            panic!("{name}: no cube generating sequence");
        };
        let Witness::Sequence { sequence, .. } = &r.witness else { panic!("sequence witness expected") };
        let distinct = sequence.to_set(t.order());
        assert!(closure(&t, &distinct).is_full(), "{name}");
        assert!(naive_rank(&t) <= distinct.len(), "{name}");
        assert!(r.rank > ceil_log2(t.order()), "{name}");
    }
}

#[test]
fn cube_rank_matches_exhaustive_oracle_on_small_tables() {
    use cayleyrank::paren::cube_set;
    use cayleyrank::{ElementSequence, Parenthesization};
    for (name, t) in corpus::quasigroup_corpus(5) {
        let n = t.order();
        let naive = (1..=6)
            .find(|&len| {
                let p = Parenthesization::balanced(len);
                (0..n.pow(len as u32)).any(|mut i| {
                    let mut seq = vec![0; len];
                    for d in seq.iter_mut().rev() {
                        *d = i % n;
                        i /= n;
                    }
                    cube_set(&t, &ElementSequence::new(seq, n).unwrap(), &p).unwrap().is_full()
                })
            })
            .unwrap();
        let RankSearch::Found(r) = quasigroup_cube_rank(&t, 6, 0, 0, &Budget::default()).unwrap() else {
            panic!("{name}");
        };
        assert_eq!(r.rank, naive, "{name}");
    }
}

#[test]
fn ring_rank_is_bounded_by_group_and_monoid_ranks() {
    for (name, r) in corpus::ring_corpus() {
        let report = ring_rank(&r, &Budget::default()).unwrap();
        assert!(report.ring.exact, "{name}");
        assert!(report.ring.rank <= report.additive.rank.min(report.multiplicative.rank), "{name}");
        if r.order() >= 2 {
            assert!(report.ring.rank <= ceil_log2(r.order()), "{name}");
        }
    }
}

#[test]
fn ranks_are_invariant_under_relabelling() {
    for (name, t) in corpus::quasigroup_corpus(7) {
        let s = corpus::shuffled(&t, 42);
        let b = Budget::default();
        assert_eq!(lower_rank(&t, &b).unwrap().rank, lower_rank(&s, &b).unwrap().rank, "{name}");
        assert_eq!(check_chain(&t, &b).unwrap().as_tuple(), check_chain(&s, &b).unwrap().as_tuple(), "{name}");
        let cube = |x| match quasigroup_cube_rank(x, 8, 0, 0, &b).unwrap() {
            RankSearch::Found(r) => r.rank,
            other => panic!("{name}: {other:?}"),
        };
        assert_eq!(cube(&t), cube(&s), "{name}");
    }
}

fn in_pool<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap().install(f)
}

#[test]
fn randomized_results_do_not_depend_on_thread_count() {
    let t = corpus::random_latin_square(24, 5);
    let run = || quasigroup_cube_rank(&t, 20, 300, 9, &Budget::default()).unwrap();
    let one = in_pool(1, run);
    assert_eq!(one, in_pool(4, run));
    assert_eq!(one, in_pool(7, run));

    let p = RandomCubeParams {
        orders: vec![8, 16],
        factors: vec![2.0, 4.0],
        instances: 6,
        tries: 100,
        samples: 3,
        seed: 13,
    };
    let sweep = |threads| in_pool(threads, || format!("{:?}", random_cube_sweep(&p, &Budget::default()).unwrap()));
    assert_eq!(sweep(1), sweep(5));

    let rz = corpus::right_zero(9);
    let exhaustive = || lower_rank(&rz, &budget()).unwrap();
    assert_eq!(in_pool(1, exhaustive), in_pool(3, exhaustive));
}

#[test]
fn trivial_structures() {
    let one = corpus::cyclic(1);
    assert_eq!(group_rank(&one, &Budget::default()).unwrap().rank, 1);
    let c = check_chain(&one, &Budget::default()).unwrap();
    assert_eq!(c.as_tuple(), (1, 1, 1, 1, 1));
    assert_eq!(
        rank_decision(&one, 0, &Budget::default()).unwrap().answer(),
        Some(false)
    );
    let empty = ElementSet::empty(1);
    assert_eq!(cayleyrank::rank::submagma_rank(&one, &empty, &Budget::default()).unwrap().rank, 0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rank_decision_is_monotone(n in 1usize..8, seed in any::<u64>(), k in 0usize..8) {
        let t = corpus::random_magma(n, seed);
        let here = rank_decision(&t, k, &budget()).unwrap().answer().unwrap();
        let next = rank_decision(&t, k + 1, &budget()).unwrap().answer().unwrap();
        prop_assert!(!here || next);
    }

    #[test]
    fn chain_holds_on_random_magmas(n in 1usize..8, seed in any::<u64>()) {
        let c = check_chain(&corpus::random_magma(n, seed), &Budget::default()).unwrap();
        prop_assert!(c.holds, "{:?}", c);
    }

    #[test]
    fn chain_holds_on_random_latin_squares(n in 1usize..9, seed in any::<u64>()) {
        let c = check_chain(&corpus::random_latin_square(n, seed), &Budget::default()).unwrap();
        prop_assert!(c.holds, "{:?}", c);
    }
}
