//! Integer-lattice normal forms over a fixed diagonal of moduli.
//!
//! A subgroup of `Z/N_1 + ... + Z/N_l` corresponds to a full-rank lattice
//! `L` with `diag(N) Z^l <= L <= Z^l`. Such a lattice has a unique
//! upper-triangular row basis with positive pivots `d_i | N_i` and
//! entries above each pivot reduced into `[0, d_j)`. All intermediate
//! vectors are kept reduced modulo the `N_j`, so entries never exceed the
//! moduli.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

pub(crate) type Matrix = Vec<Vec<BigInt>>;

fn reduce_tail(v: &mut [BigInt], moduli: &[BigInt], from: usize) {
    for j in from..v.len() {
        if v[j].is_negative() || v[j] >= moduli[j] {
            v[j] = v[j].mod_floor(&moduli[j]);
        }
    }
}

/// Canonical basis of `span(gens) + diag(moduli) Z^l`.
pub(crate) fn hermite_basis<I>(moduli: &[BigInt], gens: I) -> Matrix
where
    I: IntoIterator<Item = Vec<BigInt>>,
{
    let l = moduli.len();
    let mut pending: Vec<Vec<BigInt>> = gens
        .into_iter()
        .map(|mut v| {
            debug_assert_eq!(v.len(), l);
            reduce_tail(&mut v, moduli, 0);
            v
        })
        .filter(|v| v.iter().any(|x| !x.is_zero()))
        .collect();

    let mut rows: Matrix = Vec::with_capacity(l);
    for i in 0..l {
        // N_i e_i is consumed here; N_j e_j for j > i stay available for reduction.
        let mut pivot = vec![BigInt::zero(); l];
        pivot[i] = moduli[i].clone();
        for v in pending.iter_mut() {
            if v[i].is_zero() {
                continue;
            }
            if (&v[i] % &pivot[i]).is_zero() {
                let q = &v[i] / &pivot[i];
                for j in i..l {
                    v[j] -= &q * &pivot[j];
                }
            } else {
                let eg = pivot[i].extended_gcd(&v[i]);
                let (g, a, b) = (eg.gcd, eg.x, eg.y);
                let p_over = &pivot[i] / &g;
                let v_over = &v[i] / &g;
                for j in i..l {
                    let pj = &a * &pivot[j] + &b * &v[j];
                    let vj = &p_over * &v[j] - &v_over * &pivot[j];
                    pivot[j] = pj;
                    v[j] = vj;
                }
                if pivot[i].is_negative() {
                    pivot.iter_mut().for_each(|x| *x = -&*x);
                }
            }
            debug_assert!(v[i].is_zero());
            reduce_tail(v, moduli, i + 1);
            reduce_tail(&mut pivot, moduli, i + 1);
        }
        pending.retain(|v| v.iter().any(|x| !x.is_zero()));
        rows.push(pivot);
    }

    for i in 0..l {
        for j in i + 1..l {
            let q = rows[i][j].div_floor(&rows[j][j]);
            if !q.is_zero() {
                let (upper, lower) = rows.split_at_mut(j);
                for c in j..l {
                    upper[i][c] -= &q * &lower[0][c];
                }
            }
        }
    }
    rows
}

/// Whether `v` lies in the lattice spanned by a canonical basis.
pub(crate) fn lattice_contains(basis: &Matrix, v: &[BigInt]) -> bool {
    let l = basis.len();
    let mut v = v.to_vec();
    for i in 0..l {
        let d = &basis[i][i];
        if !(&v[i] % d).is_zero() {
            return false;
        }
        let q = &v[i] / d;
        if !q.is_zero() {
            for j in i..l {
                v[j] -= &q * &basis[i][j];
            }
        }
    }
    true
}

/// `diag(moduli) * basis^{-1}`, an integer upper-triangular matrix whose
/// columns span the dual lattice `{t : basis * diag(moduli)^{-1} * t in Z^l}`.
pub(crate) fn dual_columns(moduli: &[BigInt], basis: &Matrix) -> Matrix {
    let l = basis.len();
    let mut u: Matrix = vec![vec![BigInt::zero(); l]; l];
    for i in 0..l {
        let (q, r) = moduli[i].div_rem(&basis[i][i]);
        debug_assert!(r.is_zero(), "pivot must divide its modulus");
        u[i][i] = q;
        for j in i + 1..l {
            let mut acc = BigInt::zero();
            for k in i..j {
                acc += &u[i][k] * &basis[k][j];
            }
            let (q, r) = (-acc).div_rem(&basis[j][j]);
            debug_assert!(r.is_zero(), "dual entry must be integral");
            u[i][j] = q;
        }
    }
    // transpose: row j of the result is column j of u
    (0..l)
        .map(|j| (0..l).map(|i| u[i][j].clone()).collect())
        .collect()
}

/// Diagonal of the Smith normal form (absolute values, divisibility chain).
pub(crate) fn smith_diagonal(mut a: Matrix) -> Vec<BigInt> {
    let n = a.len();
    let m = a.first().map_or(0, Vec::len);
    let mut diag = Vec::with_capacity(n.min(m));
    for t in 0..n.min(m) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..n {
                for j in t..m {
                    if !a[i][j].is_zero()
                        && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                diag.extend(std::iter::repeat_n(BigInt::zero(), n.min(m) - t));
                return diag;
            };
            a.swap(t, bi);
            for row in a.iter_mut() {
                row.swap(t, bj);
            }
            let mut clean = true;
            for i in t + 1..n {
                let q = &a[i][t] / &a[t][t];
                if !q.is_zero() {
                    for j in t..m {
                        let s = &q * &a[t][j];
                        a[i][j] -= s;
                    }
                }
                clean &= a[i][t].is_zero();
            }
            for j in t + 1..m {
                let q = &a[t][j] / &a[t][t];
                if !q.is_zero() {
                    for i in t..n {
                        let s = &q * &a[i][t];
                        a[i][j] -= s;
                    }
                }
                clean &= a[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            let offender =
                (t + 1..n).find(|&i| (t + 1..m).any(|j| !(&a[i][j] % &a[t][t]).is_zero()));
            match offender {
                Some(i) => {
                    for j in t..m {
                        let s = a[i][j].clone();
                        a[t][j] += s;
                    }
                }
                None => break,
            }
        }
        diag.push(a[t][t].abs());
    }
    diag
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Matrix {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    fn v(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn hermite_basis_of_small_lattices() {
        let n = v(&[4]);
        assert_eq!(hermite_basis(&n, vec![v(&[2])]), m(&[&[2]]));
        assert_eq!(hermite_basis(&n, vec![v(&[3])]), m(&[&[1]]));
        assert_eq!(hermite_basis(&n, Vec::new()), m(&[&[4]]));

        let n = v(&[2, 2]);
        assert_eq!(hermite_basis(&n, vec![v(&[1, 1])]), m(&[&[1, 1], &[0, 2]]));
        // span + 2Z^2 with (2,1): pivot in column 2 drops to 1
        assert_eq!(hermite_basis(&n, vec![v(&[0, 1])]), m(&[&[2, 0], &[0, 1]]));
    }

    #[test]
    fn hermite_basis_is_generator_order_independent() {
        let n = v(&[4, 8, 3]);
        let a = hermite_basis(&n, vec![v(&[1, 2, 0]), v(&[0, 4, 1]), v(&[2, 6, 2])]);
        let b = hermite_basis(&n, vec![v(&[2, 6, 2]), v(&[1, 2, 0]), v(&[-3, 12, 4])]);
        assert_eq!(a, b);
    }

    #[test]
    fn membership_against_basis() {
        let n = v(&[4, 2]);
        let b = hermite_basis(&n, vec![v(&[2, 1])]);
        assert!(lattice_contains(&b, &v(&[2, 1])));
        assert!(lattice_contains(&b, &v(&[0, 0])));
        assert!(lattice_contains(&b, &v(&[4, 0])));
        assert!(!lattice_contains(&b, &v(&[2, 0])));
        assert!(!lattice_contains(&b, &v(&[1, 0])));
    }

    #[test]
    fn dual_of_full_and_trivial() {
        let n = v(&[4, 3]);
        let full = hermite_basis(&n, vec![v(&[1, 0]), v(&[0, 1])]);
        let d = dual_columns(&n, &full);
        assert_eq!(hermite_basis(&n, d), m(&[&[4, 0], &[0, 3]]));
        let triv = hermite_basis(&n, Vec::new());
        let d = dual_columns(&n, &triv);
        assert_eq!(hermite_basis(&n, d), m(&[&[1, 0], &[0, 1]]));
    }

    #[test]
    fn smith_diagonal_examples() {
        assert_eq!(smith_diagonal(m(&[&[2, 0], &[0, 3]])), v(&[1, 6]));
        assert_eq!(smith_diagonal(m(&[&[4, 2], &[0, 2]])), v(&[2, 4]));
        assert_eq!(smith_diagonal(m(&[&[0, 0], &[0, 0]])), v(&[0, 0]));
        assert_eq!(
            smith_diagonal(m(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]])),
            v(&[2, 6, 12])
        );
    }
}
