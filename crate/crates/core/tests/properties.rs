use std::sync::OnceLock;

use equising::abhyankar::{fint, int_mult, is_irreducible, milnor, semigroup_of};
use equising::bipoly::{adic_expand, approximate_root, q_adic_coefficients, resultant_y, BiPoly, Rat};
use equising::canon::{canonical_element, sample_member};
use equising::enumalg::{enumerate_semigroups, least_conductor};
use equising::numsg::{gaps, is_member, theta_rep, validate, SemigroupData};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use proptest::prelude::*;

fn corpus() -> &'static [SemigroupData] {
    static CORPUS: OnceLock<Vec<SemigroupData>> = OnceLock::new();
    CORPUS.get_or_init(|| (2..=120).step_by(2).flat_map(enumerate_semigroups).collect())
}

fn small_corpus() -> Vec<SemigroupData> {
    corpus()
        .iter()
        .filter(|s| *s.conductor().unwrap() <= BigInt::from(40))
        .cloned()
        .collect()
}

fn to_u64(v: &[BigInt]) -> Vec<u64> {
    v.iter().map(|x| x.to_u64().unwrap()).collect()
}

/// Members below `limit` by dynamic programming over the generators.
fn reachable(gens: &[u64], limit: usize) -> Vec<bool> {
    let mut ok = vec![false; limit];
    ok[0] = true;
    for n in 1..limit {
        ok[n] = gens.iter().any(|&g| g as usize <= n && ok[n - g as usize]);
    }
    ok
}

/// Straight transcription of the validity rules on machine integers.
fn valid_oracle(r: &[i64]) -> bool {
    if r.is_empty() || r.iter().any(|&x| x <= 0) {
        return false;
    }
    if r.windows(2).any(|w| w[1] <= w[0]) {
        return false;
    }
    let mut d = vec![r[0]];
    for &x in &r[1..] {
        let last = *d.last().unwrap();
        d.push(num_integer::gcd(last, x));
    }
    if *d.last().unwrap() != 1 {
        return false;
    }
    if d.windows(2).any(|w| w[1] >= w[0]) {
        return false;
    }
    (1..r.len() - 1).all(|k| r[k + 1] * d[k + 1] > r[k] * d[k])
}

fn arb_poly(max_x: u32, max_y: u32, max_terms: usize) -> impl Strategy<Value = BiPoly> {
    prop::collection::vec((-6i64..=6, 1i64..=3, 0..=max_x, 0..=max_y), 1..=max_terms).prop_map(|ts| {
        BiPoly::from_terms(
            ts.into_iter()
                .map(|(n, d, xe, ye)| (Rat::new(n.into(), d.into()), xe, ye)),
        )
    })
}

fn arb_monic(max_x: u32, deg: u32) -> impl Strategy<Value = BiPoly> {
    arb_poly(max_x, deg.saturating_sub(1), 4).prop_map(move |low| {
        let low = BiPoly::from_terms(low.terms().filter(|(_, ye, _)| *ye < deg).map(|(x, y, c)| (c.clone(), x, y)));
        &BiPoly::int_monomial(1, 0, deg) + &low
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn membership_and_conductor_match_dynamic_programming(i in 0usize..10_000) {
        let s = &corpus()[i % corpus().len()];
        let gens = to_u64(s.r());
        let c = s.conductor().unwrap().to_usize().unwrap();
        let ok = reachable(&gens, c + gens[gens.len() - 1] as usize + 2);
        for (n, &member) in ok.iter().enumerate() {
            prop_assert_eq!(is_member(s, &BigInt::from(n)).unwrap(), member, "n={}", n);
        }
        if c > 0 {
            prop_assert!(!ok[c - 1]);
        }
        prop_assert!(ok[c..].iter().all(|&b| b));
        prop_assert_eq!(gaps(s).unwrap().len(), c / 2);
    }

    #[test]
    fn theta_representation_matches_search(i in 0usize..10_000) {
        let s = &corpus()[i % corpus().len()];
        let r = to_u64(s.r());
        let e = to_u64(s.e());
        for k in 1..=s.h() {
            let target = r[k] * e[k - 1];
            let mut found = Vec::new();
            let mut theta = vec![0u64; k];
            // enumerate digit exponents, solve for theta_0
            loop {
                let rest: u64 = (1..k).map(|j| theta[j] * r[j]).sum();
                if rest <= target && (target - rest) % r[0] == 0 {
                    theta[0] = (target - rest) / r[0];
                    found.push(theta.clone());
                }
                let mut j = 1;
                while j < k {
                    theta[j] += 1;
                    if theta[j] < e[j - 1] {
                        break;
                    }
                    theta[j] = 0;
                    j += 1;
                }
                if j == k {
                    break;
                }
            }
            prop_assert_eq!(found.len(), 1, "k={} of <{}>", k, s);
            prop_assert_eq!(to_u64(&theta_rep(s, k).unwrap()), found[0].clone());
        }
    }

    #[test]
    fn validation_matches_oracle(r in prop::collection::vec(1i64..60, 1..5)) {
        let big: Vec<BigInt> = r.iter().map(|&x| BigInt::from(x)).collect();
        prop_assert_eq!(validate(&big).valid, valid_oracle(&r), "{:?}", r);
    }

    #[test]
    fn derivatives_obey_leibniz(p in arb_poly(6, 4, 5), q in arb_poly(6, 4, 5)) {
        let two = Rat::from_integer(2.into());
        prop_assert_eq!((&p * &p).derivative_x(), (&p * &p.derivative_x()).scale(&two));
        prop_assert_eq!((&p * &q).derivative_y(), &(&p.derivative_y() * &q) + &(&p * &q.derivative_y()));
    }

    #[test]
    fn division_reconstructs(a in arb_poly(6, 7, 6), g in arb_monic(4, 3)) {
        let (q, r) = a.y_divmod(&g).unwrap();
        prop_assert_eq!(&(&q * &g) + &r, a);
        prop_assert!(r.deg_y().is_none_or(|d| d < 3));
    }

    #[test]
    fn resultant_order_is_additive(f in arb_monic(4, 3), g in arb_monic(4, 2), h in arb_monic(4, 2)) {
        let whole = resultant_y(&f, &(&g * &h)).x_order();
        let parts = (resultant_y(&f, &g).x_order(), resultant_y(&f, &h).x_order());
        if let (Some(a), Some(b)) = (parts.0.finite(), parts.1.finite()) {
            prop_assert_eq!(whole.finite(), Some(a + b));
        } else {
            prop_assert!(whole.is_infinite());
        }
    }

    #[test]
    fn approximate_roots_have_vanishing_second_coefficient(f in arb_monic(5, 6), pick in 0usize..4) {
        let d = [1u32, 2, 3, 6][pick];
        let g = approximate_root(&f, d).unwrap();
        prop_assert_eq!(g.deg_y(), Some(6 / d));
        let alphas = q_adic_coefficients(&f, &g).unwrap();
        prop_assert_eq!(alphas.len(), d as usize + 1);
        if d > 1 {
            prop_assert!(alphas[1].is_zero());
        }
        prop_assert_eq!(approximate_root(&f, d).unwrap(), g);
    }

    #[test]
    fn adic_expansion_reconstructs(p in arb_poly(5, 9, 6), i in 0usize..10_000) {
        let s = &corpus()[i % corpus().len()];
        let c = canonical_element(s).unwrap();
        let e = adic_expand(&p, &c.levels).unwrap();
        prop_assert_eq!(e.reconstruct(), p);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn canonical_levels_are_the_criterion_data(i in 0usize..10_000) {
        let s = &corpus()[i % corpus().len()];
        let c = canonical_element(s).unwrap();
        let g = c.equation();
        for (k, dk) in s.d().iter().enumerate().take(s.h()) {
            prop_assert_eq!(&approximate_root(g, dk.to_u32().unwrap()).unwrap(), &c.levels[k]);
            prop_assert_eq!(int_mult(g, &c.levels[k]).finite(), s.r()[k + 1].to_u64());
        }
        let trace = is_irreducible(g).unwrap();
        prop_assert!(trace.verdict.is_irreducible());
        prop_assert_eq!(&trace.g[..], &c.levels[..s.h()]);
    }

    #[test]
    fn products_are_reducible(i in 0usize..10_000, j in 0usize..10_000, shift in 0u32..3) {
        let small = small_corpus();
        let a = canonical_element(&small[i % small.len()]).unwrap().equation().clone();
        let b = canonical_element(&small[j % small.len()]).unwrap().equation().clone();
        // move the second branch slightly so the factors are distinct
        let b = &b + &BiPoly::int_monomial(1, 40 + shift, 0);
        let t = is_irreducible(&(&a * &b)).unwrap();
        prop_assert!(!t.verdict.is_irreducible(), "{} * {}", a, b);
    }

    #[test]
    fn fint_agrees_with_intersection_on_sampled_members(
        i in 0usize..10_000,
        seed in any::<u64>(),
        partner in arb_poly(10, 7, 4),
    ) {
        let small = small_corpus();
        let s = &small[i % small.len()];
        let p = sample_member(s, seed, 2, 4).unwrap();
        let n = p.deg_y().unwrap();
        let partner = BiPoly::from_terms(partner.terms().filter(|(_, y, _)| *y < n).map(|(x, y, c)| (c.clone(), x, y)));
        prop_assume!(!partner.is_zero());
        let trace = is_irreducible(&p).unwrap();
        let f = fint(&partner, &trace.r, &trace.g).unwrap().value();
        prop_assert_eq!(f, int_mult(&partner, &p).finite());
    }

    #[test]
    fn sampled_members_keep_their_class(i in 0usize..10_000, seed in any::<u64>(), terms in 0usize..5) {
        let small = small_corpus();
        let s = &small[i % small.len()];
        let p = sample_member(s, seed, terms, 9).unwrap();
        let found = semigroup_of(&p).unwrap();
        prop_assert_eq!(found.r(), s.r());
        prop_assert_eq!(BigInt::from(milnor(&p).unwrap()), s.conductor().unwrap().clone());
    }
}

#[test]
fn enumeration_outputs_satisfy_the_length_bounds() {
    for m in (2..=120).step_by(2) {
        let out = enumerate_semigroups(m);
        for s in &out {
            assert_eq!(s.conductor(), Some(&BigInt::from(m)));
            let h = s.h();
            let last = s.r()[h].to_i128().unwrap();
            assert!(3 * last >= 5 * (1i128 << (2 * h - 1)) - 1, "<{s}>");
            assert!(m as i128 >= least_conductor(h), "<{s}>");
        }
        assert_eq!(out, enumerate_semigroups(m));
        assert!(out.windows(2).all(|w| to_u64(w[0].r()) < to_u64(w[1].r())));
    }
}
