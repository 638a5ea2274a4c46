use proptest::prelude::*;

use roughmat::io::{parse_matrix, parse_partition, write_matrix, write_partition};
use roughmat::matroid::{circuits_via_nullspace, VectorMatroid};
use roughmat::roughsets::enumerate_partitions;
use roughmat::{ExactMatrix, FieldElement, FieldSpec, Universe, Vector};

fn spec_strategy() -> impl Strategy<Value = FieldSpec> {
    prop_oneof![
        Just(FieldSpec::Binary),
        Just(FieldSpec::Prime(3)),
        Just(FieldSpec::Prime(5)),
        Just(FieldSpec::Rational),
    ]
}

fn matrix_strategy(max_rows: usize, max_cols: usize) -> impl Strategy<Value = ExactMatrix> {
    (spec_strategy(), 1..=max_rows, 1..=max_cols).prop_flat_map(|(spec, r, c)| {
        proptest::collection::vec(proptest::collection::vec(-3i64..=3, c), r)
            .prop_map(move |grid| ExactMatrix::from_rows(spec, &grid).unwrap())
    })
}

fn finite_matrix_strategy(max_rows: usize, max_cols: usize) -> impl Strategy<Value = ExactMatrix> {
    matrix_strategy(max_rows, max_cols).prop_filter("finite field", |m| m.spec().is_finite())
}

fn square_strategy(max_n: usize) -> impl Strategy<Value = ExactMatrix> {
    (spec_strategy(), 1..=max_n).prop_flat_map(|(spec, n)| {
        proptest::collection::vec(proptest::collection::vec(-3i64..=3, n), n)
            .prop_map(move |grid| ExactMatrix::from_rows(spec, &grid).unwrap())
    })
}

fn rational() -> impl Strategy<Value = FieldElement> {
    (-50i64..=50, 1i64..=20).prop_map(|(n, d)| FieldElement::from_ratio(n, d).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn rref_is_idempotent(m in matrix_strategy(8, 8)) {
        let once = m.rref();
        let twice = once.matrix.rref();
        prop_assert_eq!(&twice.matrix, &once.matrix);
        prop_assert_eq!(twice.pivot_cols, once.pivot_cols);
        prop_assert_eq!(twice.rank, once.rank);
    }

    #[test]
    fn rank_equals_transpose_rank(m in matrix_strategy(8, 8)) {
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn null_space_has_expected_size(m in finite_matrix_strategy(5, 7)) {
        let p = m.spec().modulus().unwrap() as u128;
        let kernel = m.null_space_basis();
        let vectors: Vec<Vector> = kernel.enumerate().unwrap().collect();
        prop_assert_eq!(vectors.len() as u128, p.pow((m.cols() - m.rank()) as u32));
        for v in &vectors {
            prop_assert!(m.apply(v).unwrap().is_zero());
        }
    }

    #[test]
    fn determinant_detects_independence(m in square_strategy(5)) {
        let all: Vec<usize> = (0..m.cols()).collect();
        prop_assert_eq!(!m.determinant().unwrap().is_zero(), m.columns_independent_at(&all));
    }

    #[test]
    fn solve_ones_is_consistent(m in finite_matrix_strategy(4, 6)) {
        let ones = Vector::ones(m.spec(), m.rows());
        let solutions = m.solve_ones();
        let found: Vec<Vector> = solutions.enumerate().unwrap().collect();
        for x in &found {
            prop_assert_eq!(&m.apply(x).unwrap(), &ones);
        }
        // Brute force over all vectors agrees on solvability and count.
        let p = m.spec().modulus().unwrap() as i64;
        let n = m.cols();
        let total = (p as u64).pow(n as u32);
        let mut count = 0u64;
        for code in 0..total {
            let digits: Vec<i64> = (0..n).map(|i| (code / (p as u64).pow(i as u32) % p as u64) as i64).collect();
            let x = Vector::from_i64s(m.spec(), &digits);
            if m.apply(&x).unwrap() == ones {
                count += 1;
            }
        }
        prop_assert_eq!(count, found.len() as u64);
    }

    #[test]
    fn circuit_routes_agree(m in finite_matrix_strategy(4, 7)) {
        let brute = VectorMatroid::new(m.clone()).circuits().unwrap();
        prop_assert_eq!(brute, circuits_via_nullspace(&m).unwrap());
    }

    #[test]
    fn rational_field_laws(a in rational(), b in rational(), c in rational()) {
        prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        prop_assert_eq!(
            a.mul(&b.add(&c).unwrap()).unwrap(),
            a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
        );
        prop_assert_eq!(a.sub(&b).unwrap().add(&b).unwrap(), a.clone());
        if !b.is_zero() {
            prop_assert_eq!(a.div(&b).unwrap().mul(&b).unwrap(), a);
        }
    }

    #[test]
    fn element_display_roundtrips(spec in spec_strategy(), n in -100i64..=100, d in 1i64..=30) {
        let x = match spec {
            FieldSpec::Rational => FieldElement::from_ratio(n, d).unwrap(),
            _ => FieldElement::from_i64(spec, n),
        };
        let text = x.to_string();
        let back = FieldElement::parse(spec, &text).unwrap();
        prop_assert_eq!(back.to_string(), text);
        prop_assert_eq!(back, x);
    }

    #[test]
    fn matrix_text_roundtrips(m in matrix_strategy(5, 6)) {
        let text = write_matrix(&m);
        let back = parse_matrix(&text).unwrap();
        prop_assert_eq!(write_matrix(&back), text);
        prop_assert_eq!(back, m);
    }
}

#[test]
fn partition_text_roundtrips() {
    for n in 1..=5 {
        let u = Universe::with_size(n).unwrap();
        for p in enumerate_partitions(&u).unwrap() {
            let text = write_partition(&p);
            let back = parse_partition(&text).unwrap();
            assert_eq!(back, p);
            assert_eq!(write_partition(&back), text);
        }
    }
}

#[test]
fn meet_laws_exhaustive() {
    for n in 1..=4 {
        let u = Universe::with_size(n).unwrap();
        let ps: Vec<_> = enumerate_partitions(&u).unwrap().collect();
        for a in &ps {
            assert_eq!(&a.meet(a).unwrap(), a);
            for b in &ps {
                let ab = a.meet(b).unwrap();
                assert_eq!(ab, b.meet(a).unwrap());
                // The meet refines both sides and is the coarsest such partition.
                for x in 0..n {
                    for y in 0..n {
                        assert_eq!(
                            ab.same_block(x, y),
                            a.same_block(x, y) && b.same_block(x, y)
                        );
                    }
                }
                for c in &ps {
                    assert_eq!(ab.meet(c).unwrap(), a.meet(&b.meet(c).unwrap()).unwrap());
                }
            }
        }
    }
}
