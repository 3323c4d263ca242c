//! Ready-made structure-constant algebras: simple extensions `k[x]/(p)`,
//! quaternion algebras, and tensor products.

use crate::algebra::Algebra;
use crate::matrix::axpy;
use crate::scalar::{FieldSpec, Scalar};

/// `k[x]/(x^n + c_{n-1} x^{n-1} + ... + c_0)` in the basis `1, x, ..., x^{n-1}`.
///
/// `lower` holds `c_0, ..., c_{n-1}`. The result is a field exactly when the
/// polynomial is irreducible; that is not checked here.
pub fn polynomial_quotient(field: FieldSpec, lower: &[Scalar], var: &str) -> Algebra {
    let n = lower.len();
    assert!(n >= 1, "degree must be positive");
    // powers[t] = coordinates of x^t for t < 2n - 1
    let mut powers: Vec<Vec<Scalar>> = Vec::with_capacity(2 * n);
    for t in 0..n {
        let mut v = vec![field.zero(); n];
        v[t] = field.one();
        powers.push(v);
    }
    for t in n..2 * n - 1 {
        // x^t = x * x^{t-1}; shift and reduce x^n = -sum c_i x^i
        let prev = &powers[t - 1];
        let mut v = vec![field.zero(); n];
        for i in 0..n - 1 {
            v[i + 1] = prev[i].clone();
        }
        let top = -&prev[n - 1];
        axpy(&mut v, &top, lower);
        powers.push(v);
    }
    let names = (0..n)
        .map(|t| match t {
            0 => "1".to_string(),
            1 => var.to_string(),
            _ => format!("{var}^{t}"),
        })
        .collect();
    let mut entries = Vec::new();
    for i in 0..n {
        for j in 0..n {
            entries.push((i, j, powers[i + j].clone()));
        }
    }
    Algebra::new(field, names, entries, None).expect("polynomial quotients are associative")
}

/// `k(sqrt d)` with basis `1, s`.
pub fn quadratic_field(field: FieldSpec, d: i64) -> Algebra {
    polynomial_quotient(field, &[field.from_i64(-d), field.zero()], "s")
}

/// `k[c]/(c^n - d)` with basis `1, c, ..., c^{n-1}`.
pub fn pure_root(field: FieldSpec, n: usize, d: i64) -> Algebra {
    let mut lower = vec![field.zero(); n];
    lower[0] = field.from_i64(-d);
    polynomial_quotient(field, &lower, "c")
}

pub fn cbrt2_field(field: FieldSpec) -> Algebra {
    pure_root(field, 3, 2)
}

/// The quaternion algebra `(a, b)`: `i^2 = a`, `j^2 = b`, `k = ij = -ji`.
pub fn quaternion_algebra(field: FieldSpec, a: i64, b: i64) -> Algebra {
    let s = |v: i64| field.from_i64(v);
    let v = |c: [i64; 4]| c.iter().map(|&x| s(x)).collect::<Vec<_>>();
    let entries = vec![
        (0, 0, v([1, 0, 0, 0])),
        (0, 1, v([0, 1, 0, 0])),
        (0, 2, v([0, 0, 1, 0])),
        (0, 3, v([0, 0, 0, 1])),
        (1, 0, v([0, 1, 0, 0])),
        (2, 0, v([0, 0, 1, 0])),
        (3, 0, v([0, 0, 0, 1])),
        (1, 1, v([a, 0, 0, 0])),
        (2, 2, v([b, 0, 0, 0])),
        (3, 3, v([-a * b, 0, 0, 0])),
        (1, 2, v([0, 0, 0, 1])),
        (2, 1, v([0, 0, 0, -1])),
        (1, 3, v([0, 0, a, 0])),
        (3, 1, v([0, 0, -a, 0])),
        (2, 3, v([0, -b, 0, 0])),
        (3, 2, v([0, b, 0, 0])),
    ];
    let names = ["1", "i", "j", "k"].iter().map(|n| n.to_string()).collect();
    Algebra::new(field, names, entries, None).expect("quaternion algebras are associative")
}

/// Hamilton's quaternions `(-1, -1)`.
pub fn hamilton(field: FieldSpec) -> Algebra {
    quaternion_algebra(field, -1, -1)
}

/// Split quaternions `(1, -1)`, isomorphic to 2x2 matrices.
pub fn split_quaternions(field: FieldSpec) -> Algebra {
    quaternion_algebra(field, 1, -1)
}

/// `A (x) B` with basis `a_i (x) b_j` at index `i * dim B + j`.
pub fn tensor_product(a: &Algebra, b: &Algebra) -> Algebra {
    assert_eq!(a.field(), b.field());
    let field = a.field();
    let (m, n) = (a.dim(), b.dim());
    let mut names = Vec::with_capacity(m * n);
    for x in a.names() {
        for y in b.names() {
            names.push(match (x.as_str(), y.as_str()) {
                ("1", "1") => "1".to_string(),
                ("1", _) => y.clone(),
                (_, "1") => x.clone(),
                _ => format!("{x}{y}"),
            });
        }
    }
    let mut entries = Vec::new();
    for i1 in 0..m {
        for j1 in 0..n {
            for i2 in 0..m {
                for j2 in 0..n {
                    let p = a.product_of_basis(i1, i2);
                    let q = b.product_of_basis(j1, j2);
                    let mut c = vec![field.zero(); m * n];
                    for (s, ps) in p.iter().enumerate() {
                        if ps.is_zero() {
                            continue;
                        }
                        for (t, qt) in q.iter().enumerate() {
                            c[s * n + t] = &c[s * n + t] + &(ps * qt);
                        }
                    }
                    entries.push((i1 * n + j1, i2 * n + j2, c));
                }
            }
        }
    }
    let (ua, ub) = (a.one(), b.one());
    let unit = (0..m * n).map(|idx| &ua.0[idx / n] * &ub.0[idx % n]).collect();
    Algebra::new(field, names, entries, Some(unit)).expect("tensor products of associative algebras are associative")
}
