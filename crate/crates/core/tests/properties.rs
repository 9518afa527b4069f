use proptest::prelude::*;
use qcharlab_core::*;

fn monomial(n: usize) -> impl Strategy<Value = LMonomial> {
    prop::collection::vec((1..=n, -6i32..=6, -3i32..=3), 0..6).prop_map(move |t| {
        t.into_iter()
            .fold(LMonomial::identity(n).unwrap(), |acc, (i, r, e)| &acc * &LMonomial::y(n, i, r).unwrap().pow(e))
    })
}

fn roots(n: usize) -> impl Strategy<Value = Vec<(usize, i32, u32)>> {
    prop::collection::vec((1..=n, -4i32..=4, 0u32..=2), 0..5)
}

fn root_product(n: usize, rs: &[(usize, i32, u32)]) -> LMonomial {
    rs.iter().fold(LMonomial::identity(n).unwrap(), |acc, &(i, s, e)| {
        &acc * &expand_simple_lroot(n, i, s).unwrap().pow(e as i32)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn order_is_reflexive(m in monomial(3)) {
        prop_assert!(le(&m, &m).unwrap());
    }

    #[test]
    fn root_products_are_below(n in 1usize..=3, base in monomial(3), rs in roots(3)) {
        let base = restrict(&base, &(1..=n).collect::<Vec<_>>()).unwrap();
        let rs: Vec<_> = rs.into_iter().filter(|r| r.0 <= n).collect();
        let lower = &base / &root_product(n, &rs);
        prop_assert!(le(&lower, &base).unwrap());
        let strict = rs.iter().any(|r| r.2 > 0);
        prop_assert_eq!(le(&base, &lower).unwrap(), !strict);
        let dec = lroot_decompose(&(&base / &lower)).unwrap();
        prop_assert_eq!(dec.expand(n).unwrap(), &base / &lower);
    }

    #[test]
    fn order_is_transitive(n in 1usize..=3, base in monomial(3), a in roots(3), b in roots(3)) {
        let base = restrict(&base, &(1..=n).collect::<Vec<_>>()).unwrap();
        let a: Vec<_> = a.into_iter().filter(|r| r.0 <= n).collect();
        let b: Vec<_> = b.into_iter().filter(|r| r.0 <= n).collect();
        let mid = &base / &root_product(n, &a);
        let low = &mid / &root_product(n, &b);
        prop_assert!(le(&low, &mid).unwrap() && le(&mid, &base).unwrap() && le(&low, &base).unwrap());
    }

    #[test]
    fn dualities(n in 1usize..=4, m in monomial(4)) {
        let m = restrict(&m, &(1..=n).collect::<Vec<_>>()).unwrap();
        let h = (n + 1) as i32;
        prop_assert_eq!(transform(&transform(&m, Transform::Kappa), Transform::Kappa), m.clone());
        prop_assert_eq!(transform(&transform(&m, Transform::Minus), Transform::Minus), m.clone());
        prop_assert_eq!(transform(&transform(&m, Transform::Star), Transform::Star), transform(&m, Transform::Tau(-2 * h)));
        prop_assert_eq!(transform(&transform(&m, Transform::Star), Transform::StarInv), m.clone());
    }

    #[test]
    fn transforms_are_multiplicative(a in monomial(3), b in monomial(3)) {
        for t in [Transform::Star, Transform::Kappa, Transform::Minus, Transform::Tau(5)] {
            prop_assert_eq!(transform(&(&a * &b), t), &transform(&a, t) * &transform(&b, t));
        }
    }

    #[test]
    fn dualities_send_roots_to_roots(n in 1usize..=4, i in 1usize..=4, s in -5i32..=5) {
        prop_assume!(i <= n);
        let a = expand_simple_lroot(n, i, s).unwrap();
        for t in [Transform::Star, Transform::StarInv, Transform::Kappa, Transform::Minus, Transform::Tau(3)] {
            let img = transform(&a, t);
            prop_assert_eq!(lroot_decompose(&img).map(|d| d.factors.len()), Some(1));
        }
    }

    #[test]
    fn restriction_detects_non_dominance(n in 2usize..=4, m in monomial(4)) {
        let m = restrict(&m, &(1..=n).collect::<Vec<_>>()).unwrap();
        let every_node = (1..=n).all(|i| is_dominant(&restrict(&m, &[i]).unwrap()));
        prop_assert_eq!(every_node, is_dominant(&m));
    }

    #[test]
    fn qchar_is_shift_equivariant(lambda in prop::collection::vec(0u32..=2, 2), t in -3i32..=3) {
        prop_assume!(lambda.iter().any(|&x| x > 0));
        for dir in [Direction::Increasing, Direction::Decreasing] {
            let a = qchar(&MinAffSpec::new(2, lambda.clone(), dir, 0).unwrap()).unwrap();
            let b = qchar(&MinAffSpec::new(2, lambda.clone(), dir, t).unwrap()).unwrap();
            prop_assert_eq!(a.map_terms(|m| transform(m, Transform::Tau(t))).unwrap(), b);
        }
    }
}

#[test]
fn star_carries_kr_qcharacters_from_node_n_to_node_one() {
    for n in 1..=3 {
        let h = n as i32 + 1;
        for k in 1..=3 {
            for r in -3..=3 {
                let image =
                    kr_qchar_by_partitions(n, r, k).unwrap().map_terms(|m| transform(m, Transform::Star)).unwrap();
                let node_one = qchar(&KRSpec::new(n, 1, r - h, k).unwrap().to_minaff()).unwrap();
                assert_eq!(image, node_one);
            }
        }
    }
}

#[test]
fn gaps_of_semistandard_columns() {
    for n in 1..=3 {
        let spec = MinAffSpec::new(n, vec![1; n], Direction::Increasing, 0).unwrap();
        let shape = highest_tableau(&spec).shape().clone();
        for t in enumerate_semistandard(n, &shape) {
            for col in t.columns() {
                let inner: usize = column_gaps(col).unwrap().iter().map(|g| g.1).sum();
                assert_eq!(inner + (n + 1 - col.last().unwrap()), n + 1 - col.len());
            }
        }
    }
    assert!(column_gaps(&[2, 2]).is_err());
}

#[test]
fn node_one_kr_qcharacters_follow_from_node_n_by_minus_symmetry() {
    for n in 1..=3usize {
        let h = n as i32 + 1;
        for k in 1..=3u32 {
            for r in -3..=3 {
                let node_one = qchar(&KRSpec::new(n, 1, r, k).unwrap().to_minaff()).unwrap();
                let image = node_one.map_terms(|m| transform(m, Transform::Minus).inverse()).unwrap();
                let node_n = kr_qchar_by_partitions(n, -r - 2 * (k as i32 - 1) - h, k).unwrap();
                assert_eq!(image, node_n, "n={n} r={r} k={k}");
            }
        }
    }
}
