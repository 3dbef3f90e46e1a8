use proptest::prelude::*;

use projpair::abelian::{coords, symplectic_decompose, FinAbGroup, SymplecticPairing};
use projpair::classify::{canonicalize_row, enumerate_multi_orbit};
use projpair::cyclo::{CycMatrix, CycNum, RootOfUnity};
use projpair::matrep::{character_matrix, commutator_root, translation_matrix};

const CONDUCTORS: [u32; 7] = [1, 3, 4, 5, 8, 12, 15];

fn cyc(m: u32, terms: &[(i64, i64, i64)]) -> CycNum {
    let mut acc = CycNum::zero(m).unwrap();
    for &(k, n, d) in terms {
        let c = CycNum::from_rational(m, n, d).unwrap();
        let z = CycNum::root_of_unity(m, k).unwrap();
        acc = acc.try_add(&c.try_mul(&z).unwrap()).unwrap();
    }
    acc
}

fn terms() -> impl Strategy<Value = Vec<(i64, i64, i64)>> {
    prop::collection::vec((0i64..30, -9i64..10, 1i64..7), 0..5)
}

fn field_elements() -> impl Strategy<Value = (u32, CycNum, CycNum, CycNum)> {
    (prop::sample::select(CONDUCTORS.to_vec()), terms(), terms(), terms())
        .prop_map(|(m, a, b, c)| (m, cyc(m, &a), cyc(m, &b), cyc(m, &c)))
}

fn small_orders() -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(1u64..13, 0..4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cyclotomic_field_axioms((_m, a, b, c) in field_elements()) {
        prop_assert_eq!(a.try_add(&b).unwrap().try_sub(&b).unwrap(), a.clone());
        prop_assert_eq!(a.try_mul(&b).unwrap(), b.try_mul(&a).unwrap());
        let lhs = a.try_mul(&b.try_add(&c).unwrap()).unwrap();
        let rhs = a.try_mul(&b).unwrap().try_add(&a.try_mul(&c).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        if !a.is_zero() {
            prop_assert!(a.try_mul(&a.inv().unwrap()).unwrap().is_one());
        }
    }

    #[test]
    fn lifting_preserves_arithmetic((m, a, b, _c) in field_elements(), k in 1u32..4) {
        let big = m * k * 2;
        prop_assume!(big <= 120);
        let (la, lb) = (a.lift(big).unwrap(), b.lift(big).unwrap());
        prop_assert_eq!(la.try_mul(&lb).unwrap(), a.try_mul(&b).unwrap());
        prop_assert_eq!(la, a);
    }

    #[test]
    fn roots_of_unity_have_their_order(order in 1u64..40, exp in -50i64..50) {
        let r = RootOfUnity::new(order, exp);
        prop_assert_eq!(order % r.order(), 0);
        let z = r.to_cyc().unwrap();
        prop_assert!(z.pow(r.order() as i64).unwrap().is_one());
        prop_assert_eq!(z.as_root_of_unity(), Some(r));
    }

    #[test]
    fn canonical_group_form(orders in small_orders()) {
        let g = FinAbGroup::from_cyclic_orders(&orders);
        prop_assert_eq!(g.order(), orders.iter().product::<u64>());
        let f = g.factors();
        prop_assert!(f.iter().all(|d| *d >= 2));
        prop_assert!(f.windows(2).all(|w| w[1] % w[0] == 0));
        // same number of elements of each order as the original product
        let count = |os: &[u64]| {
            let mut hist = std::collections::BTreeMap::new();
            for e in coords::elements(os) {
                *hist.entry(coords::order_of(os, &e)).or_insert(0u64) += 1;
            }
            hist
        };
        prop_assert_eq!(count(f), count(&orders));
        prop_assert_eq!(g.to_string().parse::<FinAbGroup>().unwrap(), g);
    }

    #[test]
    fn commutator_scalars_are_roots_of_unity(orders in prop::collection::vec(1u64..5, 1..3), seed in any::<u64>()) {
        let g = FinAbGroup::from_cyclic_orders(&orders);
        let els = g.elements();
        let chars = g.characters();
        let x = &els[(seed % els.len() as u64) as usize];
        let xi = &chars[(seed / 7 % chars.len() as u64) as usize];
        let tau = translation_matrix(&g, x).unwrap();
        let sigma = character_matrix(&g, xi).unwrap();
        let c = commutator_root(&sigma, &tau).unwrap();
        prop_assert_eq!(g.order() % c.order(), 0);
        prop_assert_eq!(c, xi.value(x).unwrap());
        let id = CycMatrix::identity(tau.rows(), 1).unwrap();
        prop_assert_eq!(tau.pow(x.order()).unwrap(), id);
    }

    #[test]
    fn hyperbolic_pairs_reconstruct_the_pairing(
        lag in prop::collection::vec(2u64..5, 0..3),
        entries in prop::collection::vec(0u64..1000, 16),
    ) {
        let orders = [lag.clone(), lag].concat();
        let group = FinAbGroup::from_cyclic_orders(&orders);
        let d = group.factors().to_vec();
        let r = d.len();
        let mut table = vec![vec![RootOfUnity::ONE; r]; r];
        let mut it = entries.iter();
        for i in 0..r {
            for j in i + 1..r {
                let g = num_integer::gcd(d[i], d[j]);
                let v = RootOfUnity::new(g, (*it.next().unwrap() % g) as i64);
                table[i][j] = v;
                table[j][i] = v.inv();
            }
        }
        let p = SymplecticPairing::new(group.clone(), table).unwrap();
        prop_assume!(p.is_nondegenerate());
        let dec = symplectic_decompose(&p).unwrap();
        prop_assert_eq!(dec.lagrangian.order().pow(2), group.order());
        for (k, a) in dec.pairs.iter().enumerate() {
            prop_assert_eq!(p.eval(&a.lambda, &a.lambda_prime), a.value);
            prop_assert_eq!(a.value.order(), a.order);
            for b in &dec.pairs[k + 1..] {
                for (u, v) in [(&a.lambda, &b.lambda), (&a.lambda, &b.lambda_prime),
                               (&a.lambda_prime, &b.lambda), (&a.lambda_prime, &b.lambda_prime)] {
                    prop_assert!(p.eval(u, v).is_one());
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn canonical_rows_are_fixed_points(n in 2usize..6, pick in any::<prop::sample::Index>()) {
        let rows = enumerate_multi_orbit(n, 3).unwrap();
        let row = &rows[pick.index(rows.len())];
        let once = canonicalize_row(row).unwrap();
        prop_assert_eq!(canonicalize_row(&once).unwrap(), once.clone());
        prop_assert_eq!(once.gamma, row.gamma.clone());
        prop_assert_eq!(once.ambient_dim, row.ambient_dim);
    }
}
