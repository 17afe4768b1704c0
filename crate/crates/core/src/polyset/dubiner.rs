//! Orthonormal (Dubiner) polynomials on the unit simplex.
//!
//! Singularity-free recurrences on the biunit simplex, evaluated over jets so
//! any derivative order comes out of one pass. The result is rescaled to be
//! orthonormal on the unit simplex.

use super::jet::{lincomb, Affine, JetSpace};
use super::jacobi::jrc;
use super::TabulatedValues;
use crate::{Error, Result};

/// Number of polynomials of total degree ≤ `n` in `d` variables.
pub fn dubiner_dim(d: usize, n: usize) -> usize {
    (1..=d).fold(1, |acc, i| acc * (n + i) / i)
}

/// Total degree of the member at position `idx`.
pub fn dubiner_degree(d: usize, idx: usize) -> usize {
    (0..).find(|&n| dubiner_dim(d, n) > idx).unwrap()
}

fn idx2(p: usize, q: usize) -> usize {
    (p + q) * (p + q + 1) / 2 + q
}

fn idx3(p: usize, q: usize, r: usize) -> usize {
    let n = p + q + r;
    n * (n + 1) * (n + 2) / 6 + (q + r) * (q + r + 1) / 2 + r
}

/// Jets of all members of degree ≤ `degree`.
///
/// `xhat` holds the unit-simplex coordinates as affine functions of the jet
/// variables, which lets callers seed the jets in physical coordinates.
pub(crate) fn dubiner_jets(space: &JetSpace, degree: usize, xhat: &[Affine]) -> Vec<Vec<f64>> {
    let b: Vec<Affine> = xhat
        .iter()
        .map(|a| Affine::combo(-1.0, &[(2.0, a)]))
        .collect();
    match xhat.len() {
        1 => legendre(space, degree, &b[0]),
        2 => triangle(space, degree, &b[0], &b[1]),
        3 => tetrahedron(space, degree, &b[0], &b[1], &b[2]),
        _ => unreachable!("dimension checked by callers"),
    }
}

fn legendre(space: &JetSpace, n: usize, x: &Affine) -> Vec<Vec<f64>> {
    let mut r = vec![space.constant(1.0)];
    if n >= 1 {
        r.push(space.times_affine(&r[0], x));
    }
    for k in 1..n {
        let kf = k as f64;
        let t = space.times_affine(&r[k], x);
        r.push(lincomb((2.0 * kf + 1.0) / (kf + 1.0), &t, kf / (kf + 1.0), &r[k - 1]));
    }
    for (k, j) in r.iter_mut().enumerate() {
        let s = (2.0 * k as f64 + 1.0).sqrt();
        j.iter_mut().for_each(|v| *v *= s);
    }
    r
}

fn triangle(space: &JetSpace, n: usize, x: &Affine, y: &Affine) -> Vec<Vec<f64>> {
    let mut r = vec![Vec::new(); dubiner_dim(2, n)];
    r[0] = space.constant(1.0);
    if n > 0 {
        let f1 = Affine::combo(0.5, &[(1.0, x), (0.5, y)]);
        let f2 = Affine::combo(0.5, &[(-0.5, y)]);
        r[idx2(1, 0)] = space.times_affine(&r[0], &f1);
        for p in 1..n {
            let pf = p as f64;
            let a = (2.0 * pf + 1.0) / (pf + 1.0);
            let bb = pf / (pf + 1.0);
            let t1 = space.times_affine(&r[idx2(p, 0)], &f1);
            let t3 = space.times_affine(&space.times_affine(&r[idx2(p - 1, 0)], &f2), &f2);
            r[idx2(p + 1, 0)] = lincomb(a, &t1, bb, &t3);
        }
        for p in 0..n {
            let pf = p as f64;
            let g = Affine::combo(0.5 * (1.0 + 2.0 * pf), &[(0.5 * (3.0 + 2.0 * pf), y)]);
            r[idx2(p, 1)] = space.times_affine(&r[idx2(p, 0)], &g);
        }
        for p in 0..n.saturating_sub(1) {
            for q in 1..n - p {
                let (a, bq, c) = jrc(2.0 * p as f64 + 1.0, 0.0, q);
                let g = Affine::combo(bq, &[(a, y)]);
                let t = space.times_affine(&r[idx2(p, q)], &g);
                r[idx2(p, q + 1)] = lincomb(1.0, &t, c, &r[idx2(p, q - 1)]);
            }
        }
    }
    for p in 0..=n {
        for q in 0..=n - p {
            // Orthonormal on the biunit triangle, times 2 for the unit triangle.
            let s = 2.0 * ((p as f64 + 0.5) * (p as f64 + q as f64 + 1.0)).sqrt();
            r[idx2(p, q)].iter_mut().for_each(|v| *v *= s);
        }
    }
    r
}

fn tetrahedron(space: &JetSpace, n: usize, x: &Affine, y: &Affine, z: &Affine) -> Vec<Vec<f64>> {
    let mut r = vec![Vec::new(); dubiner_dim(3, n)];
    r[0] = space.constant(1.0);
    if n > 0 {
        let f1 = Affine::combo(1.0, &[(1.0, x), (0.5, y), (0.5, z)]);
        let yz = Affine::combo(0.0, &[(0.5, y), (0.5, z)]);
        let f3 = Affine::combo(0.5, &[(1.0, y), (0.5, z)]);
        let f4 = Affine::combo(0.5, &[(-0.5, z)]);
        r[idx3(1, 0, 0)] = space.times_affine(&r[0], &f1);
        for p in 1..n {
            let pf = p as f64;
            let a1 = (2.0 * pf + 1.0) / (pf + 1.0);
            let a2 = pf / (pf + 1.0);
            let t1 = space.times_affine(&r[idx3(p, 0, 0)], &f1);
            let t2 = space.times_affine(&space.times_affine(&r[idx3(p - 1, 0, 0)], &yz), &yz);
            r[idx3(p + 1, 0, 0)] = lincomb(a1, &t1, a2, &t2);
        }
        for p in 0..n {
            let pf = p as f64;
            let g = Affine::combo(pf + 1.0, &[(pf + 1.5, y), (0.5, z)]);
            r[idx3(p, 1, 0)] = space.times_affine(&r[idx3(p, 0, 0)], &g);
        }
        for p in 0..n.saturating_sub(1) {
            for q in 1..n - p {
                let (aq, bq, cq) = jrc(2.0 * p as f64 + 1.0, 0.0, q);
                let g = Affine::combo(0.0, &[(aq, &f3), (bq, &f4)]);
                let t = space.times_affine(&r[idx3(p, q, 0)], &g);
                let t5 = space.times_affine(&space.times_affine(&r[idx3(p, q - 1, 0)], &f4), &f4);
                r[idx3(p, q + 1, 0)] = lincomb(1.0, &t, cq, &t5);
            }
        }
        for p in 0..n {
            for q in 0..n - p {
                let s = (p + q) as f64;
                let g = Affine::combo(1.0 + s, &[(2.0 + s, z)]);
                r[idx3(p, q, 1)] = space.times_affine(&r[idx3(p, q, 0)], &g);
            }
        }
        for p in 0..n {
            for q in 0..n - p {
                for rr in 1..n - p - q {
                    let (ar, br, cr) = jrc(2.0 * (p + q) as f64 + 2.0, 0.0, rr);
                    let g = Affine::combo(br, &[(ar, z)]);
                    let t = space.times_affine(&r[idx3(p, q, rr)], &g);
                    r[idx3(p, q, rr + 1)] = lincomb(1.0, &t, cr, &r[idx3(p, q, rr - 1)]);
                }
            }
        }
    }
    for p in 0..=n {
        for q in 0..=n - p {
            for rr in 0..=n - p - q {
                let (pf, qf, rf) = (p as f64, q as f64, rr as f64);
                let s = 8f64.sqrt() * ((pf + 0.5) * (pf + qf + 1.0) * (pf + qf + rf + 1.5)).sqrt();
                r[idx3(p, q, rr)].iter_mut().for_each(|v| *v *= s);
            }
        }
    }
    r
}

/// Tabulate the orthonormal basis of degree ≤ `degree` on the unit `d`-simplex.
pub fn dubiner_tabulate(d: usize, degree: usize, points: &[Vec<f64>], max_deriv: usize) -> Result<TabulatedValues> {
    if !(1..=3).contains(&d) {
        return Err(Error::UnsupportedDimension(d));
    }
    let space = JetSpace::new(d, max_deriv);
    let nb = dubiner_dim(d, degree);
    let mut tab = TabulatedValues::zeros(d, max_deriv, nb, points.to_vec(), 1);
    for (ip, x) in points.iter().enumerate() {
        if x.len() != d {
            return Err(Error::InvalidArgument(format!("point {x:?} is not {d}-dimensional")));
        }
        let seeds: Vec<Affine> = (0..d)
            .map(|i| {
                let mut g = [0.0; 3];
                g[i] = 1.0;
                Affine { value: x[i], grad: g }
            })
            .collect();
        let jets = dubiner_jets(&space, degree, &seeds);
        for (b, jet) in jets.iter().enumerate() {
            for k in 0..space.len() {
                tab.set(k, b, ip, 0, space.derivative(jet, k));
            }
        }
    }
    Ok(tab)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::simplex_rule;

    fn gram(d: usize, n: usize) -> f64 {
        let rule = simplex_rule(d, 2 * n).unwrap();
        let tab = dubiner_tabulate(d, n, rule.points(), 0).unwrap();
        let nb = dubiner_dim(d, n);
        let mut worst: f64 = 0.0;
        for i in 0..nb {
            for j in 0..nb {
                let g: f64 = (0..rule.len())
                    .map(|q| rule.weights()[q] * tab.get(0, i, q, 0) * tab.get(0, j, q, 0))
                    .sum();
                let e = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((g - e).abs());
            }
        }
        worst
    }

    #[test]
    fn orthonormal_on_unit_simplices() {
        assert!(gram(1, 6) < 1e-12);
        assert!(gram(2, 3) < 1e-12);
        assert!(gram(2, 6) < 1e-11);
        assert!(gram(3, 4) < 1e-11);
    }

    #[test]
    fn constant_member_and_counts() {
        let t = dubiner_tabulate(2, 0, &[vec![0.2, 0.3]], 0).unwrap();
        assert!((t.get(0, 0, 0, 0) - 2f64.sqrt()).abs() < 1e-15);
        assert_eq!(dubiner_dim(2, 4), 15);
        assert_eq!(dubiner_dim(3, 2), 10);
        assert_eq!(dubiner_degree(2, 5), 2);
        assert_eq!(dubiner_degree(2, 6), 3);
        assert!(dubiner_tabulate(4, 1, &[], 0).is_err());
    }

    #[test]
    fn derivatives_match_central_differences() {
        let h = 1e-5;
        for d in [2usize, 3] {
            let pts: Vec<Vec<f64>> = (0..50)
                .map(|k| {
                    let t = k as f64 / 50.0;
                    let mut p = vec![0.1 + 0.25 * t, 0.2 + 0.1 * (7.0 * t).sin().abs()];
                    if d == 3 {
                        p.push(0.15 + 0.05 * t);
                    }
                    p
                })
                .collect();
            let tab = dubiner_tabulate(d, 4, &pts, 2).unwrap();
            for i in 0..d {
                let shift = |s: f64| -> Vec<Vec<f64>> {
                    pts.iter().map(|p| { let mut q = p.clone(); q[i] += s; q }).collect()
                };
                let tp = dubiner_tabulate(d, 4, &shift(h), 1).unwrap();
                let tm = dubiner_tabulate(d, 4, &shift(-h), 1).unwrap();
                let mut alpha = vec![0; d];
                alpha[i] = 1;
                let k1 = tab.deriv_index(&alpha).unwrap();
                for b in 0..dubiner_dim(d, 4) {
                    for p in 0..pts.len() {
                        let fd = (tp.get(0, b, p, 0) - tm.get(0, b, p, 0)) / (2.0 * h);
                        assert!((fd - tab.get(k1, b, p, 0)).abs() < 1e-7 * (1.0 + tab.get(k1, b, p, 0).abs()));
                        for j in 0..d {
                            let mut a1 = vec![0; d];
                            a1[j] = 1;
                            let mut a2 = alpha.clone();
                            a2[j] += 1;
                            let fd2 = (tp.get(tp.deriv_index(&a1).unwrap(), b, p, 0)
                                - tm.get(tm.deriv_index(&a1).unwrap(), b, p, 0))
                                / (2.0 * h);
                            let exact = tab.get(tab.deriv_index(&a2).unwrap(), b, p, 0);
                            assert!((fd2 - exact).abs() < 1e-5 * (1.0 + exact.abs()));
                        }
                    }
                }
            }
        }
    }
}
