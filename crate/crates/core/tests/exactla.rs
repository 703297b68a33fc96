use jacsyz_core::exactla::{
    kernel, rank, span_rank, span_rank_rational, EchelonSpace, ExactMatrix, Field, PrimeField, Rationals, MERSENNE_61,
};
use jacsyz_core::polycore::{monomial_basis, parse, HomPoly};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Rows `g * f_i` for `g` of degree `k - d + 1`, written on the monomials of degree `k`.
fn jacobian_rows(f: &HomPoly, k: u32) -> Vec<Vec<BigRational>> {
    let target = monomial_basis(k);
    let mut rows = Vec::new();
    for part in f.partials() {
        for g in monomial_basis(k + 1 - f.degree()) {
            let prod = part.mul(&HomPoly::monomial(g, q(1)));
            rows.push(target.iter().map(|m| prod.coeff(m)).collect());
        }
    }
    rows
}

/// Coefficients of `(1 + t + ... + t^(n-1))^3`.
fn cube_of_geometric(n: usize) -> Vec<usize> {
    let base = vec![1usize; n];
    let mul = |a: &[usize], b: &[usize]| {
        let mut out = vec![0; a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        out
    };
    mul(&mul(&base, &base), &base)
}

#[test]
fn identity_and_zero() {
    let id = ExactMatrix::identity(Rationals, 3);
    assert_eq!(rank(&id), 3);
    assert_eq!(kernel(&id).dimension, 0);
    let zero = ExactMatrix::zeros(Rationals, 4, 5);
    assert_eq!(rank(&zero), 0);
    assert_eq!(kernel(&zero).dimension, 5);
    let f = PrimeField::default_field();
    assert_eq!(rank(&ExactMatrix::identity(f, 7)), 7);
    assert_eq!(rank(&ExactMatrix::zeros(f, 2, 2)), 0);
}

#[test]
fn kernel_of_a_single_row() {
    let m = ExactMatrix::from_integers(1, 2, &[1, 1]);
    let k = kernel(&m);
    assert_eq!(k.dimension, 1);
    let v = &k.vectors[0];
    assert!(!v[0].is_zero());
    assert_eq!(&v[1] / &v[0], q(-1));
    assert_eq!(m.mul_vec(v), vec![q(0)]);
}

#[test]
fn fermat_quintic_jacobian_rank_at_degree_eight() {
    let f = parse("x^5+y^5+z^5").unwrap();
    let rows = jacobian_rows(&f, 8);
    assert_eq!((rows.len(), rows[0].len()), (45, 45));
    let milnor = cube_of_geometric(4)[8];
    assert_eq!(milnor, 3);
    let m = ExactMatrix::from_rows(Rationals, 45, rows.clone());
    assert_eq!(rank(&m), 45 - milnor);
    let field = PrimeField::default_field();
    let reduced: Vec<Vec<u64>> = rows.iter().map(|r| r.iter().map(|x| field.from_rat(x).unwrap()).collect()).collect();
    assert_eq!(rank(&ExactMatrix::from_rows(field, 45, reduced)), 42);
}

#[test]
fn fermat_hilbert_function_from_ranks() {
    let f = parse("x^4+y^4+z^4").unwrap();
    let want = cube_of_geometric(3);
    for k in 3..=8u32 {
        let n = monomial_basis(k).len();
        let m = ExactMatrix::from_rows(Rationals, n, jacobian_rows(&f, k));
        assert_eq!(n - rank(&m), want.get(k as usize).copied().unwrap_or(0), "degree {k}");
    }
}

#[test]
fn rank_plus_nullity() {
    let m = ExactMatrix::from_integers(3, 4, &[1, 2, 3, 4, 2, 4, 6, 8, 0, 1, -1, 5]);
    let k = kernel(&m);
    assert_eq!(rank(&m), 2);
    assert_eq!(k.dimension, 2);
    assert_eq!(k.pivot_columns.len() + k.free_columns.len(), 4);
    for v in &k.vectors {
        assert!(m.mul_vec(v).iter().all(Zero::is_zero));
    }
}

#[test]
fn span_dimensions() {
    let v = vec![q(1), q(-2), q(3)];
    assert_eq!(span_rank_rational(3, &[v.clone(), v.clone(), v.clone()]), 1);
    assert_eq!(span_rank_rational(3, &[]), 0);
    let field = PrimeField::new(MERSENNE_61).unwrap();
    assert_eq!(span_rank(field, 3, vec![vec![1, 2, 3], vec![2, 4, 6], vec![0, 0, 1]]), 2);
    assert_eq!(span_rank(field, 3, Vec::new()), 0);
}

#[test]
fn multiples_of_one_syzygy_are_independent() {
    let f = parse("x^5+y^5+z^5").unwrap();
    let [fx, fy, _] = f.partials();
    let rho = [fy, fx.scale(&q(-1)), HomPoly::zero(4)];
    let basis = monomial_basis(5);
    let vectors: Vec<Vec<BigRational>> = ["x", "y", "z"]
        .iter()
        .map(|v| {
            let l = parse(v).unwrap();
            rho.iter()
                .flat_map(|c| {
                    let prod = c.mul(&l);
                    basis.iter().map(move |m| prod.coeff(m)).collect::<Vec<_>>()
                })
                .collect()
        })
        .collect();
    assert_eq!(span_rank_rational(3 * basis.len(), &vectors), 3);
}

#[test]
fn echelon_space_membership() {
    let field = PrimeField::default_field();
    let mut space = EchelonSpace::new(field, 4);
    assert!(space.insert(vec![1, 0, 2, 0]));
    assert!(space.insert(vec![0, 1, 1, 0]));
    assert!(!space.insert(vec![2, 3, 7, 0]));
    assert_eq!(space.dim(), 2);
    assert!(space.contains(&[1, 1, 3, 0]));
    assert!(!space.contains(&[0, 0, 0, 1]));
}

#[test]
fn prime_and_rational_ranks_agree_on_integer_matrices() {
    let entries = [3, -1, 4, 1, -5, 9, 2, -6, 5, 3, -5, 8, 9, -7, 9, 3, 2, 3, 8, 4];
    let m = ExactMatrix::from_integers(4, 5, &entries);
    let field = PrimeField::default_field();
    let rows = (0..4).map(|i| entries[5 * i..5 * i + 5].iter().map(|&v| field.from_i64(v)).collect()).collect();
    assert_eq!(rank(&m), rank(&ExactMatrix::from_rows(field, 5, rows)));
}
