use proptest::prelude::*;

use logvoa::fock::{apply_h, ModuleVector, OmegaSpec};
use logvoa::intertwiner::{f_map_equivariant, intertwiner_apply, IntertwinerSpec, OperatorSeries};
use logvoa::logseries::{LogSeries, Mode, TruncationWindow};
use logvoa::scalar::{contragredient_weight_identity, eta_inverse_series, int, rat, Rational};

fn rational() -> impl Strategy<Value = Rational> {
    (-50i64..=50, 1i64..=12).prop_map(|(n, d)| rat(n, d))
}

fn count_partitions(n: u32, max_part: u32) -> u64 {
    if n == 0 {
        return 1;
    }
    (1..=max_part.min(n)).map(|k| count_partitions(n - k, k)).sum()
}

#[test]
fn eta_matches_enumeration() {
    let s = eta_inverse_series(30).unwrap();
    assert_eq!(s.offset, rat(-1, 24));
    for n in 0..=30u32 {
        assert_eq!(s.coeffs[n as usize], int(count_partitions(n, n) as i64), "p({n})");
    }
    assert!(eta_inverse_series(-1).is_err());
}

fn vector() -> impl Strategy<Value = ModuleVector> {
    prop::collection::vec((prop::collection::vec(1u32..=3, 0..=3), 0usize..2, -4i64..=4), 1..=4)
        .prop_map(|terms| {
            let mut v = ModuleVector::zero();
            for (parts, j, c) in terms {
                v.add_scaled(&ModuleVector::monomial(&parts, j).unwrap(), &int(c));
            }
            v
        })
}

fn series(offset: Rational) -> impl Strategy<Value = LogSeries> {
    prop::collection::vec((-3i64..=3, 0u32..=2, vector()), 0..=5).prop_map(move |terms| {
        let w = TruncationWindow::new(-3, 3, 2).unwrap();
        let mut s = LogSeries::zero(offset.clone(), w);
        for (k, j, v) in terms {
            s.accumulate(k, j, &v, &int(1)).unwrap();
        }
        s
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 1000, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn contragredient_weight(lambda in rational(), a in rational()) {
        prop_assert!(contragredient_weight_identity(&lambda, &a));
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn ddx_is_additive(s in series(rat(1, 3)), t in series(rat(1, 3))) {
        let lhs = s.add(&t).unwrap().ddx();
        let rhs = s.ddx().add(&t.ddx()).unwrap();
        prop_assert_eq!(lhs.first_difference(&rhs).unwrap(), None);
    }

    #[test]
    fn modes_are_linear(s in series(int(0)), t in series(int(0)), n in -3i64..=3, c in rational()) {
        let o = OmegaSpec::block(int(1), 2).unwrap();
        let a = rat(1, 2);
        for mode in [Mode::H(n), Mode::L(n)] {
            let lhs = s.add(&t).unwrap().apply_mode(mode, &o, &a);
            let rhs = s.apply_mode(mode, &o, &a).add(&t.apply_mode(mode, &o, &a)).unwrap();
            prop_assert_eq!(lhs.first_difference(&rhs).unwrap(), None);
            let lhs = s.scale(&c).apply_mode(mode, &o, &a);
            let rhs = s.apply_mode(mode, &o, &a).scale(&c);
            prop_assert_eq!(lhs.first_difference(&rhs).unwrap(), None);
        }
    }

    #[test]
    fn depth_of_sum(s in series(int(0)), t in series(int(0))) {
        prop_assert!(s.add(&t).unwrap().depth() <= s.depth().max(t.depth()));
    }

    #[test]
    fn h_shifts_level(v in vector(), n in -4i64..=4) {
        let o = OmegaSpec::block(int(2), 2).unwrap();
        let w = apply_h(n, &v, &o);
        for (s, _) in w.terms() {
            let lvl = s.partition.size() as i64;
            prop_assert!(v.terms().any(|(t, _)| t.partition.size() as i64 - n == lvl));
        }
    }

    #[test]
    fn dual_keeps_block_sizes(sizes in prop::collection::vec(1usize..=3, 1..=3), lambda in rational()) {
        let o = OmegaSpec::jordan(lambda.clone(), &sizes).unwrap();
        let d = o.contragredient();
        prop_assert_eq!(d.block_sizes(), o.block_sizes());
        prop_assert_eq!(d.eigenvalue(), &-lambda);
        prop_assert_eq!(d.contragredient().h0_matrix(), o.h0_matrix());
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn outputs_live_in_the_right_coset(
        m1 in 1usize..=2, m2 in 1usize..=2,
        l in -2i64..=2, n in -4i64..=4,
        parts in prop::collection::vec(1u32..=2, 0..=2),
    ) {
        let (lam, nu) = (int(l), rat(n, 3));
        let s = IntertwinerSpec::identity(
            rat(1, 2),
            OmegaSpec::block(lam.clone(), m1).unwrap(),
            OmegaSpec::block(nu.clone(), m2).unwrap(),
        ).unwrap();
        let w = TruncationWindow::symmetric(2, 0).unwrap();
        let y = intertwiner_apply(&s, &ModuleVector::vacuum(m1 - 1), &ModuleVector::monomial(&parts, 0).unwrap(), &w).unwrap();
        let shift = y.offset() - &lam * &nu;
        prop_assert!(shift.is_integer());
        prop_assert!(f_map_equivariant(&OperatorSeries::new(s, w)).unwrap());
        prop_assert!(y.terms().all(|(_, v)| !v.is_zero()));
    }
}
