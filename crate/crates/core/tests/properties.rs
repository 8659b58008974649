use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use permprob_core::matrix::build_family_matrix;
use permprob_core::prob::{exact_counts, p_eval, q_eval, uniform_grid, ApproxModel};
use permprob_core::terms::{e_table, e_table_bruteforce, factorial, v_closed_form, v_via_w, w_closed_form};
use permprob_core::{permanent_naive, permanent_ryser, BinaryMatrix, MatrixFamily};

fn matrix(max_n: usize) -> impl Strategy<Value = BinaryMatrix> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(0u64..(1u64 << n), n).prop_map(|rows| BinaryMatrix::from_rows(rows).unwrap())
    })
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

fn family() -> impl Strategy<Value = MatrixFamily> {
    prop_oneof![Just(MatrixFamily::A), Just(MatrixFamily::B), Just(MatrixFamily::C)]
}

proptest! {
    #[test]
    fn ryser_matches_naive(m in matrix(8)) {
        prop_assert_eq!(permanent_ryser(&m).unwrap(), permanent_naive(&m).unwrap());
    }

    #[test]
    fn permanent_invariant_under_transpose_and_permutation(
        (m, rp, cp) in matrix(9).prop_flat_map(|m| {
            let n = m.n();
            (Just(m), permutation(n), permutation(n))
        })
    ) {
        let p = permanent_ryser(&m).unwrap();
        prop_assert_eq!(permanent_ryser(&m.transpose()).unwrap(), p);
        prop_assert_eq!(permanent_ryser(&m.permuted(&rp, &cp)).unwrap(), p);
    }

    #[test]
    fn permanent_bounded_by_factorial(m in matrix(12)) {
        let p = permanent_ryser(&m).unwrap();
        let fact: u128 = (1..=m.n() as u128).product();
        prop_assert!(p <= fact);
        prop_assert_eq!(p == fact, m.is_all_ones());
    }

    #[test]
    fn family_matrix_fixed_part(f in family(), n in 1usize..=10) {
        let k = f.variable_count(n);
        let zeros = build_family_matrix(f, n, &vec![false; k]).unwrap();
        let ones = build_family_matrix(f, n, &vec![true; k]).unwrap();
        let expected_zero = match f {
            MatrixFamily::C => 1,
            MatrixFamily::A | MatrixFamily::B => 0,
        };
        prop_assert_eq!(permanent_ryser(&zeros).unwrap(), expected_zero);
        prop_assert!(ones.is_all_ones());
    }

    #[test]
    fn probabilities_in_unit_interval(f in family(), n in 1usize..=12, r in 0.0f64..=1.0) {
        let q = q_eval(&ApproxModel::new(f, n), r).unwrap();
        prop_assert!((0.0..=1.0).contains(&q), "Q = {q}");
    }

    #[test]
    fn exact_probability_in_unit_interval(f in family(), n in 1usize..=3, r in 0.0f64..=1.0) {
        let p = p_eval(&exact_counts(f, n).unwrap(), r).unwrap();
        prop_assert!((0.0..=1.0).contains(&p), "P = {p}");
    }
}

#[test]
fn q_and_p_decrease_for_zero_target_families() {
    let grid = uniform_grid(101).unwrap();
    for family in [MatrixFamily::A, MatrixFamily::B] {
        for n in 1..=4 {
            let model = ApproxModel::new(family, n);
            let exact = exact_counts(family, n).unwrap();
            let q: Vec<f64> = grid.iter().map(|&r| q_eval(&model, r).unwrap()).collect();
            let p: Vec<f64> = grid.iter().map(|&r| p_eval(&exact, r).unwrap()).collect();
            for w in q.windows(2).chain(p.windows(2)) {
                assert!(w[1] <= w[0] + 1e-15, "{family}_{n} not monotone: {w:?}");
            }
        }
    }
}

#[test]
fn closed_forms_match_bruteforce() {
    for n in 1..=9 {
        for family in MatrixFamily::ALL {
            assert_eq!(
                e_table(family, n),
                e_table_bruteforce(family, n).unwrap(),
                "{family}_{n}"
            );
        }
    }
}

#[test]
fn v_routes_agree_to_twelve() {
    for n in 1..=12 {
        for m in 1..=n {
            assert_eq!(v_closed_form(n, m).unwrap(), v_via_w(n, m).unwrap(), "V_{n}({m})");
        }
    }
}

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn to_int(r: BigRational) -> BigUint {
    assert!(r.is_integer() && !r.is_negative(), "{r} is not a nonnegative integer");
    r.to_integer().to_biguint().unwrap()
}

/// The textbook sums over 1/l!, evaluated in exact rationals.
#[test]
fn closed_forms_match_rational_series() {
    for n in 1..=14usize {
        for m in 0..=n {
            let npm = BigRational::from_integer(BigInt::from(factorial(n) / factorial(n - m)));
            let mut series = BigRational::zero();
            let mut inv_fact = BigRational::one();
            for l in 0..=m {
                if l > 0 {
                    inv_fact /= ratio(l as i64, 1);
                }
                if l % 2 == 0 {
                    series += &inv_fact;
                } else {
                    series -= &inv_fact;
                }
            }
            let w = &npm * &series;
            assert_eq!(to_int(w), w_closed_form(n, m).unwrap(), "W_{n}({m})");

            // inv_fact now holds 1/m!
            let sign = if m % 2 == 0 { ratio(1, 1) } else { ratio(-1, 1) };
            let braces = ratio(m as i64 + 1, 1) * &series - sign * &inv_fact;
            let v = npm / ratio(n as i64, 1) * braces;
            assert_eq!(to_int(v), v_closed_form(n, m).unwrap(), "V_{n}({m})");
        }
    }
}
