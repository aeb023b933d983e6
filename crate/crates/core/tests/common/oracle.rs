//! Brute-force reference for small bounded linear programs.

use ladpref::LinearProgram;
use rand::Rng;

/// Random LP over the box `[0, 10]^n` with a few inequality rows and
/// occasionally one equality row.
pub fn random_box_lp<R: Rng>(rng: &mut R) -> LinearProgram {
    let n = rng.gen_range(1..=6);
    let objective = (0..n).map(|_| rng.gen_range(-5.0..5.0)).collect();
    let mut lp = LinearProgram::new(objective);
    for v in 0..n {
        lp.set_bounds(v, 0.0, 10.0).unwrap();
    }
    for _ in 0..rng.gen_range(1..=4) {
        let row = (0..n).map(|_| rng.gen_range(-5.0..5.0)).collect();
        lp.add_le(row, rng.gen_range(-10.0..25.0)).unwrap();
    }
    if rng.gen_bool(0.3) {
        let row = (0..n).map(|_| rng.gen_range(-5.0..5.0)).collect();
        lp.add_eq(row, rng.gen_range(-5.0..15.0)).unwrap();
    }
    lp
}

fn solve_square(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[piv][col].abs() < 1e-12 {
            return None;
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for r in 0..n {
            if r != col {
                let f = a[r][col] / a[col][col];
                if f != 0.0 {
                    for c in col..n {
                        a[r][c] -= f * a[col][c];
                    }
                    b[r] -= f * b[col];
                }
            }
        }
    }
    Some((0..n).map(|i| b[i] / a[i][i]).collect())
}

fn combinations(n: usize, k: usize, f: &mut impl FnMut(&[usize])) {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, f);
            cur.pop();
        }
    }
    rec(0, n, k, &mut Vec::with_capacity(k), f);
}

/// Minimum over all basic feasible points, or `None` when no vertex is
/// feasible. Only valid for LPs with every variable boxed.
pub fn vertex_minimum(lp: &LinearProgram, tol: f64) -> Option<f64> {
    let n = lp.num_vars();
    let mut faces: Vec<(Vec<f64>, f64)> = lp.ub_constraints().to_vec();
    for (v, &(lo, hi)) in lp.bounds().iter().enumerate() {
        assert!(
            lo.is_finite() && hi.is_finite(),
            "oracle needs boxed variables"
        );
        let mut e = vec![0.0; n];
        e[v] = 1.0;
        faces.push((e.clone(), lo));
        faces.push((e, hi));
    }
    let eqs = lp.eq_constraints();
    if eqs.len() > n {
        return None;
    }
    let mut best: Option<f64> = None;
    combinations(faces.len(), n - eqs.len(), &mut |idx| {
        let mut a: Vec<Vec<f64>> = eqs.iter().map(|(r, _)| r.clone()).collect();
        let mut b: Vec<f64> = eqs.iter().map(|(_, v)| *v).collect();
        for &i in idx {
            a.push(faces[i].0.clone());
            b.push(faces[i].1);
        }
        if let Some(x) = solve_square(a, b) {
            if lp.max_violation(&x) <= tol {
                let z = lp.evaluate(&x);
                best = Some(best.map_or(z, |m: f64| m.min(z)));
            }
        }
    });
    best
}
