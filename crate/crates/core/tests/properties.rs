use jacsyz_core::exactla::{kernel, rank, ExactMatrix, PrimeField, Rationals};
use jacsyz_core::families::{combinatorics_of_lines, product, Line};
use jacsyz_core::polycore::{is_reduced, monomial_basis, parse, rat, HomPoly};
use jacsyz_core::syzres::{hilbert_data, mdr, milnor_dim, resolve, saturation_profile, Arithmetic, ResolveOptions};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;

const Q: Arithmetic = Arithmetic::Rational;

/// Plain Gaussian elimination over the rationals.
fn naive_rank(rows: usize, cols: usize, entries: &[i64]) -> usize {
    let mut m: Vec<Vec<BigRational>> = (0..rows)
        .map(|i| {
            entries[i * cols..(i + 1) * cols].iter().map(|&v| BigRational::from_integer(BigInt::from(v))).collect()
        })
        .collect();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let pivot = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = &row[c] / &pivot[c];
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x -= &f * y;
                }
            }
        }
        r += 1;
    }
    r
}

fn poly_of(d: u32, coeffs: &[i64]) -> HomPoly {
    let terms = monomial_basis(d).into_iter().zip(coeffs).map(|(m, &c)| (m, rat(c)));
    HomPoly::from_terms(d, terms).unwrap()
}

/// A Fermat curve plus a sparse integer perturbation.
fn perturbed_fermat() -> impl Strategy<Value = HomPoly> {
    (4u32..=5).prop_flat_map(|d| {
        let n = monomial_basis(d).len();
        prop::collection::vec(prop_oneof![4 => Just(0i64), 1 => -3i64..=3], n).prop_map(move |c| {
            let base = parse(&format!("x^{d}+y^{d}+z^{d}")).unwrap();
            base.add(&poly_of(d, &c)).unwrap()
        })
    })
}

/// Reduced and not a cone over points, so that `mdr(f) > 0`.
fn admissible(f: &HomPoly) -> bool {
    !f.is_zero() && f.degree() >= 3 && is_reduced(f, 0, Q).map(|r| r.is_reduced()).unwrap_or(false) && mdr(f, Q).is_ok()
}

/// `(1-t)^3 Σ_{k<K} h_k t^k + τ t^K (1-t)^2` with `K = 3d - 4`.
fn hilbert_numerator(d: u32, h: &[usize], tau: usize) -> Vec<i64> {
    let top = 3 * d as usize - 4;
    let mut series: Vec<i64> = h[..top].iter().map(|&x| x as i64).collect();
    series.resize(top + 3, 0);
    let mut out = vec![0i64; top + 3];
    for (k, &c) in series.iter().enumerate() {
        for (j, w) in [1, -3, 3, -1].into_iter().enumerate() {
            if k + j < out.len() {
                out[k + j] += w * c;
            }
        }
    }
    for (j, w) in [1, -2, 1].into_iter().enumerate() {
        out[top + j] += w * tau as i64;
    }
    while out.last() == Some(&0) {
        out.pop();
    }
    out
}

fn distinct_lines(max: usize) -> impl Strategy<Value = Vec<Line>> {
    prop::collection::vec([-3i64..=3, -3i64..=3, -3i64..=3], 3..=max).prop_map(|ls| {
        let mut out: Vec<Line> = Vec::new();
        for l in ls {
            if l == [0, 0, 0] {
                continue;
            }
            let cross_zero =
                |a: &Line| a[1] * l[2] == a[2] * l[1] && a[2] * l[0] == a[0] * l[2] && a[0] * l[1] == a[1] * l[0];
            if !out.iter().any(cross_zero) {
                out.push(l);
            }
        }
        out
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn euler_identity(d in 1u32..=6, coeffs in prop::collection::vec(-9i64..=9, 28)) {
        let f = poly_of(d, &coeffs);
        let [fx, fy, fz] = f.partials();
        let lhs = HomPoly::var(0).mul(&fx).add(&HomPoly::var(1).mul(&fy)).unwrap().add(&HomPoly::var(2).mul(&fz)).unwrap();
        prop_assert_eq!(lhs, f.scale(&rat(d as i64)));
    }

    #[test]
    fn print_then_parse(d in 1u32..=6, coeffs in prop::collection::vec(-20i64..=20, 28)) {
        let f = poly_of(d, &coeffs);
        prop_assume!(!f.is_zero());
        prop_assert_eq!(parse(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn rank_plus_nullity(rows in 1usize..=6, cols in 1usize..=6, entries in prop::collection::vec(-4i64..=4, 36)) {
        let e = &entries[..rows * cols];
        let m = ExactMatrix::from_integers(rows, cols, e);
        prop_assert_eq!(rank(&m) + kernel(&m).dimension, cols);
        for v in &kernel(&m).vectors {
            prop_assert!(m.mul_vec(v).iter().all(Zero::is_zero));
        }
        let field = PrimeField::default_field();
        let mp = ExactMatrix::from_rows(field, cols, e.chunks(cols).map(|r| r.iter().map(|&v| field.from_i64(v)).collect()).collect());
        prop_assert_eq!(rank(&mp) + kernel(&mp).dimension, cols);
    }

    #[test]
    fn rank_matches_naive_elimination(rows in 1usize..=6, cols in 1usize..=6, entries in prop::collection::vec(-5i64..=5, 36)) {
        let e = &entries[..rows * cols];
        let want = naive_rank(rows, cols, e);
        prop_assert_eq!(rank(&ExactMatrix::from_integers(rows, cols, e)), want);
        let rq = ExactMatrix::from_rows(Rationals, cols, e.chunks(cols).map(|r| r.iter().map(|&v| BigRational::from_integer(v.into())).collect()).collect());
        prop_assert_eq!(rank(&rq), want);
    }

    #[test]
    fn arrangement_pairs_are_counted_once(lines in distinct_lines(9)) {
        prop_assume!(lines.len() >= 2);
        let comb = combinatorics_of_lines(&lines).unwrap();
        prop_assert_eq!(comb.pair_count(), lines.len() * (lines.len() - 1) / 2);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn hilbert_closure_on_perturbed_fermat_curves(f in perturbed_fermat()) {
        prop_assume!(admissible(&f));
        let res = resolve(&f, &ResolveOptions::default()).unwrap();
        let h: Vec<usize> = (0..=3 * f.degree() - 4).map(|k| milnor_dim(&f, k, Q).unwrap()).collect();
        let want = hilbert_numerator(f.degree(), &h, res.data.tau);
        prop_assert_eq!(res.data.betti_numerator(), want.clone());
        prop_assert_eq!(hilbert_data(&f, Q).unwrap().numerator, want);
    }

    #[test]
    fn saturation_is_symmetric(f in perturbed_fermat()) {
        prop_assume!(admissible(&f));
        let s = saturation_profile(&f, Q).unwrap();
        prop_assert!(s.asymmetries().is_empty(), "{:?}", s.n_dims);
    }

    #[test]
    fn arrangement_tau_is_combinatorial(lines in distinct_lines(6)) {
        prop_assume!(lines.len() >= 3);
        let comb = combinatorics_of_lines(&lines).unwrap();
        prop_assume!(comb.points.len() > 1);
        let data = resolve(&product(&lines), &ResolveOptions::default()).unwrap().data;
        prop_assert_eq!(data.tau, comb.combinatorial_tau());
    }
}
