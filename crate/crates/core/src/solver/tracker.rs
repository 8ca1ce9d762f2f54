//! Projective total-degree homotopy and the path tracker.
//!
//! Unknowns are homogeneous coordinates `x = (x0, x1, ..., xn)` with `z = x/x0`,
//! held on a random affine patch `a . x = 1`, so paths heading to infinity
//! stay bounded and end at `x0 = 0`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;

use super::config::SolverConfig;
use super::eval::{norm, solve_linear, CompiledPoly};

/// Endpoint refinement may not move a point further than this, relative to
/// `1 + |z|`; larger moves mean Newton left the path's basin.
const REFINE_DRIFT: f64 = 1e-4;

/// Step underflow at or after this `t` is treated as reaching a singular end.
const END_ZONE: f64 = 0.99;

/// Paths record `|x0| / |x|` at the last accepted point before this `t`.
const WATCH_T: f64 = 0.999;

/// A first Newton correction larger than this fraction of `1 + |x|` rejects
/// the step; looser bounds let paths jump near singular solutions at infinity.
const MAX_FIRST_CORRECTION: f64 = 0.01;

pub(crate) struct Homotopy {
    n: usize,
    degrees: Vec<u32>,
    /// Homogenized targets in `x0, ..., xn`.
    target: Vec<CompiledPoly>,
    gamma: Complex64,
    patch: Vec<Complex64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum PathEnd {
    /// Tracked all the way to `t = 1`.
    Reached,
    /// Step underflow inside the end zone.
    Singular,
    /// Step underflow before the end zone, or step budget exhausted.
    Failed,
}

pub(crate) struct Tracked {
    pub end: PathEnd,
    pub x: Vec<Complex64>,
    pub t: f64,
    pub steps: usize,
    /// `|x0| / |x|` at the last accepted point with `t <= WATCH_T`.
    pub watch_ratio: f64,
}

fn infinity_ratio(x: &[Complex64]) -> f64 {
    x[0].norm() / norm(x).max(f64::MIN_POSITIVE)
}

impl Homotopy {
    pub fn new(target: Vec<CompiledPoly>, degrees: Vec<u32>, cfg: &SolverConfig) -> Self {
        let n = degrees.len();
        let mut rng = cfg.rng(0);
        let patch = (0..=n)
            .map(|_| Complex64::from_polar(1.0, rng.gen_range(0.0..std::f64::consts::TAU)))
            .collect();
        Homotopy {
            n,
            degrees,
            target,
            gamma: cfg.gamma(),
            patch,
        }
    }

    /// The start point with mixed-radix index `index`: `z_i` is a `d_i`-th root
    /// of unity, scaled onto the patch.
    pub fn start_point(&self, index: u64) -> Vec<Complex64> {
        let mut k = index;
        let mut x = vec![Complex64::new(1.0, 0.0)];
        for &d in &self.degrees {
            let r = k % u64::from(d);
            k /= u64::from(d);
            x.push(Complex64::from_polar(
                1.0,
                std::f64::consts::TAU * r as f64 / f64::from(d),
            ));
        }
        let s: Complex64 = self.patch.iter().zip(&x).map(|(a, xi)| a * xi).sum();
        x.iter().map(|xi| xi / s).collect()
    }

    /// `H(x, t)`, `dH/dx` and `dH/dt`; the patch is the last row.
    fn eval(&self, x: &[Complex64], t: f64) -> (DVector<Complex64>, DMatrix<Complex64>, DVector<Complex64>) {
        let n = self.n;
        let one = Complex64::new(1.0, 0.0);
        let mut h = DVector::zeros(n + 1);
        let mut j = DMatrix::zeros(n + 1, n + 1);
        let mut ht = DVector::zeros(n + 1);
        let s = Complex64::new(1.0 - t, 0.0) * self.gamma;
        for i in 0..n {
            let d = self.degrees[i];
            let (f, gf) = self.target[i].eval_grad(x);
            let xi = x[i + 1];
            let g = xi.powu(d) - x[0].powu(d);
            h[i] = s * g + t * f;
            ht[i] = f - self.gamma * g;
            for v in 0..=n {
                j[(i, v)] = t * gf[v];
            }
            let dd = f64::from(d);
            j[(i, i + 1)] += s * dd * xi.powu(d - 1);
            j[(i, 0)] -= s * dd * x[0].powu(d - 1);
        }
        h[n] = self.patch.iter().zip(x).map(|(a, xi)| a * xi).sum::<Complex64>() - one;
        for v in 0..=n {
            j[(n, v)] = self.patch[v];
        }
        (h, j, ht)
    }

    /// `dx/dt = -(dH/dx)^{-1} dH/dt`.
    fn velocity(&self, x: &[Complex64], t: f64) -> Option<Vec<Complex64>> {
        let (_, j, ht) = self.eval(x, t);
        solve_linear(j, -ht).map(|v| v.iter().copied().collect())
    }

    fn rk4(&self, x: &[Complex64], t: f64, dt: f64) -> Option<Vec<Complex64>> {
        let axpy = |a: f64, k: &[Complex64]| -> Vec<Complex64> {
            x.iter().zip(k).map(|(xi, ki)| xi + ki * a).collect()
        };
        let k1 = self.velocity(x, t)?;
        let k2 = self.velocity(&axpy(dt / 2.0, &k1), t + dt / 2.0)?;
        let k3 = self.velocity(&axpy(dt / 2.0, &k2), t + dt / 2.0)?;
        let k4 = self.velocity(&axpy(dt, &k3), t + dt)?;
        Some(
            (0..x.len())
                .map(|i| x[i] + (k1[i] + k2[i] * 2.0 + k3[i] * 2.0 + k4[i]) * (dt / 6.0))
                .collect(),
        )
    }

    /// Newton at fixed `t`: at most five iterations, each step shorter than
    /// half the previous one.
    fn correct(&self, mut x: Vec<Complex64>, t: f64, tol: f64) -> Option<Vec<Complex64>> {
        let mut prev = f64::INFINITY;
        for it in 0..5 {
            let (h, j, _) = self.eval(&x, t);
            let dx = solve_linear(j, -h)?;
            for (xi, di) in x.iter_mut().zip(dx.iter()) {
                *xi += di;
            }
            let step = dx.norm();
            let scale = 1.0 + norm(&x);
            if step <= tol * scale {
                return Some(x);
            }
            if (it == 0 && step > MAX_FIRST_CORRECTION * scale) || step > 0.5 * prev {
                return None;
            }
            prev = step;
        }
        None
    }

    pub fn track(&self, start: Vec<Complex64>, cfg: &SolverConfig) -> Tracked {
        let mut x = start;
        let mut t = 0.0f64;
        let mut h = cfg.step_max / 4.0;
        let mut streak = 0;
        let mut steps = 0;
        let mut watch_ratio = infinity_ratio(&x);
        while t < 1.0 {
            if steps >= cfg.max_steps {
                return Tracked {
                    end: PathEnd::Failed,
                    x,
                    t,
                    steps,
                    watch_ratio,
                };
            }
            steps += 1;
            let dt = h.min(1.0 - t);
            let t_next = if dt >= 1.0 - t { 1.0 } else { t + dt };
            let next = self
                .rk4(&x, t, dt)
                .and_then(|xp| self.correct(xp, t_next, cfg.newton_tol));
            match next {
                Some(xc) => {
                    x = xc;
                    t = t_next;
                    if t <= WATCH_T {
                        watch_ratio = infinity_ratio(&x);
                    }
                    streak += 1;
                    if streak >= 3 {
                        h = (2.0 * h).min(cfg.step_max);
                        streak = 0;
                    }
                }
                None => {
                    h /= 2.0;
                    streak = 0;
                    if h < cfg.step_min {
                        let end = if t >= END_ZONE {
                            PathEnd::Singular
                        } else {
                            PathEnd::Failed
                        };
                        return Tracked {
                            end,
                            x,
                            t,
                            steps,
                            watch_ratio,
                        };
                    }
                }
            }
        }
        Tracked {
            end: PathEnd::Reached,
            x,
            t,
            steps,
            watch_ratio,
        }
    }
}

/// Affine Newton polish of an endpoint. Returns the best point seen and its
/// normalized residual, or `None` if Newton drifted away.
pub(crate) fn refine(
    eqs: &[CompiledPoly],
    z: Vec<Complex64>,
    iterations: usize,
) -> Option<(Vec<Complex64>, f64)> {
    let n = z.len();
    let scales: Vec<f64> = eqs.iter().map(|e| e.scale().max(f64::MIN_POSITIVE)).collect();
    let residual = |z: &[Complex64]| -> f64 {
        eqs.iter()
            .zip(&scales)
            .map(|(e, s)| e.eval(z).norm() / s)
            .fold(0.0, f64::max)
    };
    let origin = z.clone();
    let limit = REFINE_DRIFT * (1.0 + norm(&origin));
    let mut best = (z.clone(), residual(&z));
    let mut z = z;
    for _ in 0..iterations {
        let mut j = DMatrix::zeros(n, n);
        let mut f = DVector::zeros(n);
        for (i, e) in eqs.iter().enumerate() {
            let (v, g) = e.eval_grad(&z);
            f[i] = -v;
            for (k, gk) in g.into_iter().enumerate() {
                j[(i, k)] = gk;
            }
        }
        let Some(dz) = solve_linear(j, f) else { break };
        for (zi, di) in z.iter_mut().zip(dz.iter()) {
            *zi += di;
        }
        let moved: Vec<Complex64> = z.iter().zip(&origin).map(|(a, b)| a - b).collect();
        if norm(&moved) > limit {
            return None;
        }
        let r = residual(&z);
        if r < best.1 {
            best = (z.clone(), r);
        }
        if dz.norm() <= 1e-15 * (1.0 + norm(&z)) {
            break;
        }
    }
    Some(best)
}
