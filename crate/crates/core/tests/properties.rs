use milnor_core::arith::gcd;
use milnor_core::counts::{
    alternating_sum, alternating_terms, alternating_terms_decrease, milnor_number, necklace_sum,
    witt, EXCEPTIONAL,
};
use milnor_core::linkforms::{
    cyclic_form_of_matrix, form_isomorphic, form_split, form_sum, is_semisimple,
    is_semisimple_by_divisors, is_simple, pm_qr_symbol, CyclicForm, SymIntMatrix,
};
use milnor_core::links::{bing_double, hopf_family, split_union, LongitudeLink};
use milnor_core::magnus::{lcs_member, link_degree, magnus_expand, FreeWord};
use milnor_core::qbounds::{degree_upper_bound, QuantumData};
use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;

fn word_strategy(rank: usize, max_len: usize) -> impl Strategy<Value = FreeWord> {
    prop::collection::vec((1..=rank, prop::bool::ANY), 0..=max_len).prop_map(move |v| {
        let pairs: Vec<(usize, i8)> = v
            .into_iter()
            .map(|(g, inv)| (g, if inv { -1 } else { 1 }))
            .collect();
        FreeWord::from_pairs(rank, &pairs).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 256,
        failure_persistence: None,
        ..ProptestConfig::default()
    })]

    #[test]
    fn expansion_is_multiplicative(u in word_strategy(3, 10), v in word_strategy(3, 10), cap in 1usize..5) {
        let lhs = magnus_expand(&u.mul(&v).unwrap(), cap).unwrap();
        let rhs = magnus_expand(&u, cap).unwrap().checked_mul(&magnus_expand(&v, cap).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn inverse_expands_to_inverse(w in word_strategy(3, 12), cap in 1usize..5) {
        let p = magnus_expand(&w, cap).unwrap();
        let q = magnus_expand(&w.inverse(), cap).unwrap();
        prop_assert!(p.checked_mul(&q).unwrap().is_one());
    }

    #[test]
    fn commutators_raise_filtration(u in word_strategy(3, 6), v in word_strategy(3, 6), x in word_strategy(3, 6)) {
        let c = FreeWord::commutator(&u, &v).unwrap();
        prop_assert!(lcs_member(&c, 2));
        let cc = FreeWord::commutator(&c, &x).unwrap();
        prop_assert!(lcs_member(&cc, 3));
        // the leading part of [u, v] is the bracket of the leading parts
        let e = magnus_expand(&c, 2).unwrap();
        let (eu, ev) = (magnus_expand(&u, 1).unwrap(), magnus_expand(&v, 1).unwrap());
        for i in 1..=3 {
            for j in 1..=3 {
                let expect = eu.coefficient(&[i]) * ev.coefficient(&[j]) - ev.coefficient(&[i]) * eu.coefficient(&[j]);
                prop_assert_eq!(e.coefficient(&[i, j]), expect);
            }
        }
    }

    #[test]
    fn lcs_membership_is_conjugation_invariant(w in word_strategy(3, 8), g in word_strategy(3, 8), k in 1usize..5) {
        prop_assert_eq!(lcs_member(&w, k), lcs_member(&w.conjugate_by(&g).unwrap(), k));
    }

    #[test]
    fn degree_ignores_deep_perturbations(d in 1usize..=4, which in 0usize..5, a in word_strategy(5, 4), b in word_strategy(5, 4)) {
        let h = hopf_family(d).unwrap();
        let r = h.components();
        let which = which % r;
        // an iterated commutator of length d + 2 lies in F_{d+2}
        let mut c = FreeWord::commutator(&a.substitute(r, |g| FreeWord::generator(r, (g - 1) % r + 1).unwrap()).unwrap(),
                                         &b.substitute(r, |g| FreeWord::generator(r, (g - 1) % r + 1).unwrap()).unwrap()).unwrap();
        for i in 0..d {
            c = FreeWord::commutator(&c, &FreeWord::generator(r, i % r + 1).unwrap()).unwrap();
        }
        let mut longitudes = h.longitudes().to_vec();
        longitudes[which] = longitudes[which].mul(&c).unwrap();
        prop_assert_eq!(link_degree(&longitudes, d + 1).unwrap(), h.degree(d + 1).unwrap());
    }

    #[test]
    fn relabeling_preserves_degree(d in 1usize..=4, seed in any::<u64>()) {
        let h = hopf_family(d).unwrap();
        let r = h.components();
        let mut perm: Vec<usize> = (1..=r).collect();
        let mut s = seed;
        for i in (1..r).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        let p = h.permute(&perm).unwrap();
        prop_assert_eq!(p.degree(d + 1).unwrap().exact(), Some(d));
        let w = h.degree(d + 1).unwrap().witness().unwrap().clone();
        let moved: Vec<usize> = w.indices.0.iter().map(|&i| perm[i - 1]).collect();
        prop_assert_eq!(p.mu_bar(&moved).unwrap(), w.value);
    }

    #[test]
    fn split_union_degree_is_min(a in 0usize..5, b in 0usize..5) {
        let pick = |i: usize| if i == 0 { LongitudeLink::unlink(2, 5).unwrap() } else { hopf_family(i).unwrap() };
        let (la, lb) = (pick(a), pick(b));
        let u = split_union(&la, &lb).unwrap();
        let cap = u.valid_to();
        let expect = la.degree(cap).unwrap().min(&lb.degree(cap).unwrap());
        let got = u.degree(cap).unwrap();
        prop_assert_eq!((got.exact(), got.lower_bound()), (expect.exact(), expect.lower_bound()));
    }

    #[test]
    fn split_round_trip(q in 1u64..10_000, n in 2u64..=300) {
        prop_assume!(gcd(q, n) == 1);
        let f = CyclicForm::new(q as i64, n).unwrap();
        let factors: Vec<u64> = milnor_core::arith::factorize(n).into_iter().map(|(p, e)| p.pow(e)).collect();
        prop_assert!(form_isomorphic(&form_sum(&form_split(&f, &factors).unwrap()), &f));
    }

    #[test]
    fn upper_bound_monotone(b in 1u64..50, o in 0u64..50, db in 1u64..5, dob in 1u64..5) {
        prop_assume!(o < b);
        let base = degree_upper_bound(&QuantumData::from_integers(5, b, o).unwrap()).unwrap().exact;
        let more_b = degree_upper_bound(&QuantumData::from_integers(5, b + db, o).unwrap()).unwrap().exact;
        prop_assert!(more_b < base || (o == 0 && more_b == base));
        if o + dob < b {
            let more_o = degree_upper_bound(&QuantumData::from_integers(5, b, o + dob).unwrap()).unwrap().exact;
            prop_assert!(more_o > base);
        }
    }
}

#[test]
fn bing_double_steps_degree_on_hopf_family() {
    for d in 1..=5 {
        let h = hopf_family(d).unwrap();
        let next = bing_double(&h, h.components()).unwrap();
        assert_eq!(next.components(), h.components() + 1);
        assert_eq!(next.degree(d + 2).unwrap().exact(), Some(d + 1));
    }
}

#[test]
fn semisimple_methods_agree_to_500() {
    for n in 1..=500u64 {
        for q in (0..n.max(1)).filter(|&q| gcd(q, n) == 1) {
            let f = CyclicForm::new(q as i64, n).unwrap();
            assert_eq!(is_semisimple(&f), is_semisimple_by_divisors(&f), "{f}");
        }
    }
}

#[test]
fn every_coprime_factorization_round_trips() {
    fn factorizations(parts: &[u64]) -> Vec<Vec<u64>> {
        // all set partitions of the prime-power parts, multiplied out
        let Some((&first, rest)) = parts.split_first() else {
            return vec![vec![]];
        };
        let mut out = Vec::new();
        for mut p in factorizations(rest) {
            for i in 0..p.len() {
                let mut q = p.clone();
                q[i] *= first;
                out.push(q);
            }
            p.push(first);
            out.push(p);
        }
        out
    }
    for n in 1..=300u64 {
        let parts: Vec<u64> = milnor_core::arith::factorize(n)
            .into_iter()
            .map(|(p, e)| p.pow(e))
            .collect();
        for orders in factorizations(&parts) {
            let orders = if orders.is_empty() { vec![1] } else { orders };
            for q in (0..n).filter(|&q| gcd(q, n) == 1) {
                let f = CyclicForm::new(q as i64, n).unwrap();
                let back = form_sum(&form_split(&f, &orders).unwrap());
                assert!(form_isomorphic(&back, &f), "{f} over {orders:?}");
            }
        }
    }
}

#[test]
fn prime_powers_congruent_3_mod_4_are_simple() {
    for p in [3u64, 7, 11, 19, 23, 31, 43, 47, 59, 67, 71, 79, 83] {
        let mut pe = p;
        while pe <= 1000 {
            for q in (1..pe).filter(|&q| gcd(q, pe) == 1) {
                assert!(
                    is_simple(&CyclicForm::new(q as i64, pe).unwrap()),
                    "{q}/{pe}"
                );
                assert_eq!(pm_qr_symbol(q as i64, pe), Ok(1));
            }
            pe *= p;
        }
    }
}

#[test]
fn stabilization_keeps_form() {
    let samples = [
        vec![vec![5]],
        vec![vec![3, 1], vec![1, 2]],
        vec![vec![2, 1, 0], vec![1, 2, 1], vec![0, 1, 4]],
    ];
    for rows in samples {
        let a = SymIntMatrix::from_i64(&rows).unwrap();
        let f = cyclic_form_of_matrix(&a).unwrap();
        for s in [1, -1] {
            let b = a.direct_sum(&SymIntMatrix::diagonal(&[s]));
            assert!(form_isomorphic(&cyclic_form_of_matrix(&b).unwrap(), &f));
        }
    }
}

#[test]
fn necklace_sums_divisible() {
    for r in 1..=50u64 {
        for k in 1..=50u64 {
            assert!(
                (necklace_sum(r, k) % BigInt::from(k)).is_zero(),
                "r={r} k={k}"
            );
        }
    }
}

#[test]
fn milnor_numbers_positive_off_exceptions() {
    for r in 2..=25u64 {
        for k in 2..=25u64 {
            let m = milnor_number(r, k).unwrap();
            if EXCEPTIONAL.contains(&(r, k)) {
                assert!(m.is_zero());
            } else {
                assert!(m > BigInt::zero(), "r={r} k={k}");
            }
        }
    }
}

#[test]
fn alternating_terms_decrease_on_generic_grid() {
    for r in 2..=25u64 {
        for k in 2..=25u64 {
            let t = alternating_terms(r, k);
            assert_eq!(alternating_sum(&t), witt(r, k).unwrap() * BigInt::from(k));
            if !EXCEPTIONAL.contains(&(r, k)) {
                assert!(alternating_terms_decrease(&t), "r={r} k={k}: {t:?}");
            }
        }
    }
}
