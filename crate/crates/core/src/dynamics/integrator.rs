//! Dormand–Prince 5(4) with FSAL stages and Hairer's continuous extension
//! for output at arbitrary sample times.

use num_complex::Complex64;

use crate::error::{Error, Result};

const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;

const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const A71: f64 = 35.0 / 384.0;
const A73: f64 = 500.0 / 1113.0;
const A74: f64 = 125.0 / 192.0;
const A75: f64 = -2187.0 / 6784.0;
const A76: f64 = 11.0 / 84.0;

// Fifth-order weights minus the embedded fourth-order ones.
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

const D1: f64 = -12715105075.0 / 11282082432.0;
const D3: f64 = 87487479700.0 / 32700410799.0;
const D4: f64 = -10690763975.0 / 1880347072.0;
const D5: f64 = 701980252875.0 / 199316789632.0;
const D6: f64 = -1453857185.0 / 822651844.0;
const D7: f64 = 69997945.0 / 29380423.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DormandPrince {
    pub rtol: f64,
    pub atol: f64,
    pub max_steps: usize,
    /// Upper bound on the step, in the same unit as t. `None` is unbounded.
    pub max_step: Option<f64>,
}

impl Default for DormandPrince {
    fn default() -> Self {
        DormandPrince {
            rtol: 1e-9,
            atol: 1e-12,
            max_steps: 2_000_000,
            max_step: None,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct IntegrationStats {
    pub accepted: usize,
    pub rejected: usize,
    pub evaluations: usize,
}

fn axpy(out: &mut [Complex64], base: &[Complex64], terms: &[(f64, &[Complex64])], h: f64) {
    for (i, o) in out.iter_mut().enumerate() {
        let mut acc = Complex64::new(0.0, 0.0);
        for (coef, k) in terms {
            acc += k[i] * *coef;
        }
        *o = base[i] + acc * h;
    }
}

impl DormandPrince {
    pub fn new(rtol: f64, atol: f64) -> Self {
        DormandPrince {
            rtol,
            atol,
            ..Default::default()
        }
    }

    /// Integrate `dy/dt = rhs(t, y)` from `(t0, y0)`, calling `on_sample(i, y)`
    /// for each entry of the non-decreasing `sample_times` (all ≥ t0).
    pub fn integrate<F, S>(
        &self,
        mut rhs: F,
        t0: f64,
        y0: &[Complex64],
        sample_times: &[f64],
        mut on_sample: S,
    ) -> Result<IntegrationStats>
    where
        F: FnMut(f64, &[Complex64], &mut [Complex64]),
        S: FnMut(usize, &[Complex64]) -> Result<()>,
    {
        let mut stats = IntegrationStats::default();
        if sample_times.windows(2).any(|w| w[1] < w[0]) {
            return Err(Error::Integration {
                t: t0,
                reason: "sample times must be sorted".into(),
            });
        }
        if sample_times.first().is_some_and(|&t| t < t0) {
            return Err(Error::Integration {
                t: t0,
                reason: "sample before initial time".into(),
            });
        }

        let n = y0.len();
        let zero = Complex64::new(0.0, 0.0);
        let mut y = y0.to_vec();
        let mut t = t0;
        let mut next = 0;
        while next < sample_times.len() && sample_times[next] == t0 {
            on_sample(next, &y)?;
            next += 1;
        }
        if next == sample_times.len() {
            return Ok(stats);
        }
        let t_end = *sample_times.last().unwrap();

        let mut k: Vec<Vec<Complex64>> = vec![vec![zero; n]; 7];
        let mut stage = vec![zero; n];
        let mut y_new = vec![zero; n];
        rhs(t, &y, &mut k[0]);
        stats.evaluations += 1;

        let mut h = self.initial_step(&y, &k[0], t_end - t);

        loop {
            if stats.accepted + stats.rejected >= self.max_steps {
                return Err(Error::Integration {
                    t,
                    reason: "step budget exhausted".into(),
                });
            }
            h = h.min(t_end - t);
            if let Some(max) = self.max_step {
                h = h.min(max);
            }
            if h <= f64::EPSILON * t.abs().max(1e-300) * 4.0 {
                return Err(Error::Integration {
                    t,
                    reason: "step size underflow".into(),
                });
            }

            let (k1, rest) = k.split_at_mut(1);
            let k1 = &k1[0];
            let (k2, rest) = rest.split_at_mut(1);
            let (k3, rest) = rest.split_at_mut(1);
            let (k4, rest) = rest.split_at_mut(1);
            let (k5, rest) = rest.split_at_mut(1);
            let (k6, k7) = rest.split_at_mut(1);
            let (k2, k3, k4, k5, k6, k7) = (
                &mut k2[0], &mut k3[0], &mut k4[0], &mut k5[0], &mut k6[0], &mut k7[0],
            );

            axpy(&mut stage, &y, &[(A21, k1)], h);
            rhs(t + C2 * h, &stage, k2);
            axpy(&mut stage, &y, &[(A31, k1), (A32, k2)], h);
            rhs(t + C3 * h, &stage, k3);
            axpy(&mut stage, &y, &[(A41, k1), (A42, k2), (A43, k3)], h);
            rhs(t + C4 * h, &stage, k4);
            axpy(
                &mut stage,
                &y,
                &[(A51, k1), (A52, k2), (A53, k3), (A54, k4)],
                h,
            );
            rhs(t + C5 * h, &stage, k5);
            axpy(
                &mut stage,
                &y,
                &[(A61, k1), (A62, k2), (A63, k3), (A64, k4), (A65, k5)],
                h,
            );
            rhs(t + h, &stage, k6);
            axpy(
                &mut y_new,
                &y,
                &[(A71, k1), (A73, k3), (A74, k4), (A75, k5), (A76, k6)],
                h,
            );
            rhs(t + h, &y_new, k7);
            stats.evaluations += 6;

            let mut sum = 0.0;
            for i in 0..n {
                let err =
                    (k1[i] * E1 + k3[i] * E3 + k4[i] * E4 + k5[i] * E5 + k6[i] * E6 + k7[i] * E7)
                        * h;
                let scale = self.atol + self.rtol * y[i].norm().max(y_new[i].norm());
                sum += (err.norm() / scale).powi(2);
            }
            let err = (sum / n as f64).sqrt();

            if !err.is_finite() {
                stats.rejected += 1;
                h *= 0.1;
                continue;
            }
            if err > 1.0 {
                stats.rejected += 1;
                h *= (0.9 * err.powf(-0.2)).max(0.2);
                continue;
            }

            // Accepted: emit every sample inside (t, t + h] from the dense output.
            let t_new = t + h;
            let mut out = vec![zero; n];
            while next < sample_times.len() && sample_times[next] <= t_new {
                let ts = sample_times[next];
                if ts == t_new {
                    on_sample(next, &y_new)?;
                } else {
                    let s = (ts - t) / h;
                    let s1 = 1.0 - s;
                    for i in 0..n {
                        let ydiff = y_new[i] - y[i];
                        let bspl = k1[i] * h - ydiff;
                        let r4 = ydiff - k7[i] * h - bspl;
                        let r5 = (k1[i] * D1
                            + k3[i] * D3
                            + k4[i] * D4
                            + k5[i] * D5
                            + k6[i] * D6
                            + k7[i] * D7)
                            * h;
                        out[i] = y[i] + (ydiff + (bspl + (r4 + r5 * s1) * s) * s1) * s;
                    }
                    on_sample(next, &out)?;
                }
                next += 1;
            }
            stats.accepted += 1;
            std::mem::swap(&mut y, &mut y_new);
            k.swap(0, 6);
            t = t_new;
            if next == sample_times.len() {
                return Ok(stats);
            }
            let factor = if err == 0.0 {
                5.0
            } else {
                (0.9 * err.powf(-0.2)).clamp(0.2, 5.0)
            };
            h *= factor;
        }
    }

    fn initial_step(&self, y: &[Complex64], f: &[Complex64], span: f64) -> f64 {
        let n = y.len() as f64;
        let (mut d0, mut d1) = (0.0, 0.0);
        for (yi, fi) in y.iter().zip(f) {
            let sc = self.atol + self.rtol * yi.norm();
            d0 += (yi.norm() / sc).powi(2);
            d1 += (fi.norm() / sc).powi(2);
        }
        let (d0, d1) = ((d0 / n).sqrt(), (d1 / n).sqrt());
        let h = if d0 < 1e-5 || d1 < 1e-5 {
            1e-6 * span
        } else {
            0.01 * d0 / d1
        };
        h.min(span)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponential_decay_and_dense_output() {
        let lambda = 3.0;
        let samples: Vec<f64> = (0..=40).map(|i| i as f64 * 0.05).collect();
        let mut got = vec![0.0; samples.len()];
        DormandPrince::new(1e-10, 1e-14)
            .integrate(
                |_, y, dy| dy[0] = -y[0] * lambda,
                0.0,
                &[Complex64::new(1.0, 0.0)],
                &samples,
                |i, y| {
                    got[i] = y[0].re;
                    Ok(())
                },
            )
            .unwrap();
        for (t, v) in samples.iter().zip(&got) {
            assert!((v - (-lambda * t).exp()).abs() < 1e-9, "t = {t}");
        }
    }

    #[test]
    fn harmonic_oscillator_phase() {
        // y' = -i w y, y = e^{-iwt}
        let w = 7.0;
        let samples = [0.0, 0.3, 1.1, 5.0];
        let mut out = Vec::new();
        let stats = DormandPrince::default()
            .integrate(
                |_, y, dy| dy[0] = y[0] * Complex64::new(0.0, -w),
                0.0,
                &[Complex64::new(1.0, 0.0)],
                &samples,
                |_, y| {
                    out.push(y[0]);
                    Ok(())
                },
            )
            .unwrap();
        for (t, v) in samples.iter().zip(&out) {
            let exact = Complex64::new(0.0, -w * t).exp();
            assert!((v - exact).norm() < 1e-7);
        }
        assert!(stats.accepted > 10);
    }

    #[test]
    fn rejects_unsorted_samples() {
        let r = DormandPrince::default().integrate(
            |_, _, dy| dy[0] = Complex64::new(0.0, 0.0),
            0.0,
            &[Complex64::new(1.0, 0.0)],
            &[1.0, 0.5],
            |_, _| Ok(()),
        );
        assert!(r.is_err());
    }

    #[test]
    fn empty_sample_list_is_a_no_op() {
        let stats = DormandPrince::default()
            .integrate(
                |_, _, _| unreachable!(),
                0.0,
                &[Complex64::new(1.0, 0.0)],
                &[],
                |_, _| Ok(()),
            )
            .unwrap();
        assert_eq!(stats, IntegrationStats::default());
    }
}
