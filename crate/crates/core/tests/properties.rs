use proptest::prelude::*;

use rcswap::diagram::RemainderDiagram;
use rcswap::involution::{conj_empty, involute, map_strict, reduce_yellow, unreduce_yellow};
use rcswap::oracle::{c_stat_brute, colours_by_delta};
use rcswap::qseries::{gf_closed, gf_symmetric, qbinom};
use rcswap::{Partition, RemainderVector};

fn partition(max_part: usize, max_len: usize) -> impl Strategy<Value = Partition> {
    prop::collection::vec(1..=max_part, 0..=max_len).prop_map(|mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(v).unwrap()
    })
}

fn remainders(s: usize, max_len: usize) -> impl Strategy<Value = RemainderVector> {
    prop::collection::vec(1..s, 0..=max_len).prop_map(move |v| RemainderVector::new(v, s).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn conjugation_is_an_involution(p in partition(12, 10)) {
        let c = p.conjugate();
        prop_assert_eq!(c.conjugate(), p.clone());
        prop_assert_eq!(c.size(), p.size());
        prop_assert_eq!(c.len(), p.width());
    }

    #[test]
    fn modulus_one_statistics(p in partition(12, 10)) {
        prop_assert_eq!(p.c_stat(1), p.width());
        prop_assert_eq!(p.r_stat(1), p.len());
    }

    #[test]
    fn closed_form_c_stat_matches_cells(p in partition(14, 10), s in 1usize..=6) {
        prop_assert_eq!(p.c_stat(s), c_stat_brute(&p, s));
        prop_assert_eq!(p.bf_stat(s, 0), p.c_stat(s));
    }

    #[test]
    fn delta_removes_the_last_remainder(p in partition(14, 10), s in 2usize..=5) {
        let rem = p.remainder_sequence(s);
        prop_assume!(!rem.is_empty());
        let d = p.delta(s).unwrap();
        prop_assert_eq!(d.size() + rem.entries()[rem.len() - 1], p.size());
        let row = p.row_positions(s).last().unwrap();
        let survives = p.parts()[row - 1] >= s;
        prop_assert_eq!(d.r_stat(s), p.r_stat(s) + usize::from(survives));
        let step = d.c_stat(s) as i64 - p.c_stat(s) as i64;
        prop_assert!(step == 0 || step == 1);
    }

    #[test]
    fn reduce_blow_up(p in partition(14, 10), s in 1usize..=5) {
        prop_assert_eq!(p.blow_up(s).reduce(s), p.clone());
        let empty_rem = p.remainder_sequence(s).is_empty();
        prop_assert_eq!(p.reduce(s).blow_up(s) == p, empty_rem);
    }

    #[test]
    fn diagram_round_trip_and_statistics(p in partition(14, 10), s in 1usize..=5) {
        let rem = p.remainder_sequence(s);
        let d = RemainderDiagram::from_partition(&p, s);
        prop_assert!(d.validate());
        prop_assert_eq!(d.compatible(&rem), Ok(true));
        prop_assert_eq!(d.reinsert(&rem, s).unwrap(), p.clone());
        prop_assert_eq!(d.diagram_r().unwrap(), p.r_stat(s));
        prop_assert_eq!(d.diagram_c().unwrap(), p.c_stat(s));
        let colours: Vec<_> = d.cells().iter().map(|c| c.colour).collect();
        prop_assert_eq!(colours_by_delta(&p, s).unwrap(), colours);
        if rem.is_strictly_increasing() {
            prop_assert!(!d.has_yellow());
        }
    }

    #[test]
    fn json_round_trips(p in partition(14, 10), s in 1usize..=5) {
        let text = serde_json::to_string(&p).unwrap();
        prop_assert_eq!(serde_json::from_str::<Partition>(&text).unwrap(), p.clone());
        let d = RemainderDiagram::from_partition(&p, s);
        let text = serde_json::to_string(&d).unwrap();
        prop_assert_eq!(serde_json::from_str::<RemainderDiagram>(&text).unwrap(), d);
    }

    #[test]
    fn yellow_reduction_round_trips(p in partition(16, 12), s in 2usize..=5) {
        let rem = p.remainder_sequence(s);
        let d = RemainderDiagram::from_partition(&p, s);
        let (red, trace) = reduce_yellow(&d, &rem).unwrap();
        prop_assert!(!red.has_yellow());
        prop_assert_eq!(red.interior().size(), d.interior().size() + rem.wmaj());
        prop_assert_eq!(red.diagram_r(), d.diagram_r());
        prop_assert_eq!(red.diagram_c(), d.diagram_c());
        let steps: Vec<usize> = trace.steps.iter().map(|s| s.descent).collect();
        prop_assert_eq!(steps, rem.weak_descents());
        prop_assert_eq!(unreduce_yellow(&red, &rem).unwrap(), d);
        let conj = red.conjugate().unwrap();
        prop_assert_eq!(conj.diagram_r(), red.diagram_c());
        prop_assert_eq!(conj.diagram_c(), red.diagram_r());
    }

    #[test]
    fn involution_swaps_statistics(p in partition(16, 12), s in 1usize..=6) {
        let out = involute(&p, s).unwrap();
        prop_assert_eq!(involute(&out, s).unwrap(), p.clone());
        prop_assert_eq!(out.size(), p.size());
        prop_assert_eq!(out.remainder_sequence(s), p.remainder_sequence(s));
        prop_assert_eq!((out.r_stat(s), out.c_stat(s)), (p.c_stat(s), p.r_stat(s)));
        let rem = p.remainder_sequence(s);
        if rem.is_empty() {
            prop_assert_eq!(conj_empty(&p, s).unwrap(), out.clone());
        }
        if rem.is_strictly_increasing() {
            prop_assert_eq!(map_strict(&p, s).unwrap(), out.clone());
        }
        if s == 1 {
            prop_assert_eq!(out, p.conjugate());
        }
    }

    #[test]
    fn gaussian_binomial_shape(n in 0i64..=12, k in 0i64..=12) {
        prop_assume!(k <= n);
        let g = qbinom(n, k);
        let coeffs = g.q_coeffs();
        prop_assert_eq!(coeffs.len() as i64 - 1, k * (n - k));
        prop_assert!(coeffs.iter().all(|c| *c > 0.into()));
        let mut rev = coeffs.clone();
        rev.reverse();
        prop_assert_eq!(rev, coeffs);
        prop_assert_eq!(g, qbinom(n, n - k));
    }

    #[test]
    fn closed_forms_are_symmetric(s in 2usize..=4, rem in remainders(4, 4), r in 0usize..=6, c in 0usize..=6) {
        prop_assume!(rem.check_modulus(s).is_ok());
        let a = gf_symmetric(s, &rem, r, c).unwrap();
        prop_assert_eq!(&a, &gf_symmetric(s, &rem, c, r).unwrap());
        prop_assert_eq!(&a, &gf_closed(s, &rem, r, c).unwrap());
        prop_assert!(a.is_polynomial());
    }
}
