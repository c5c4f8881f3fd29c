//! Dormand-Prince 5(4) with PI step-size control, used as a comparator.

use crate::error::{Error, Result};
use crate::field::vector_field_full;
use crate::source::source_terms;
use crate::state::{LagrangianState, Tangent};

use super::StepperConfig;

#[cfg(test)]
const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [&[f64]; 7] = [
    &[],
    &[1.0 / 5.0],
    &[3.0 / 40.0, 9.0 / 40.0],
    &[44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0],
    &[19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0],
    &[9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0],
    &[35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
/// Difference between the 5th and embedded 4th order weights.
const E: [f64; 7] =
    [71.0 / 57600.0, 0.0, -71.0 / 16695.0, 71.0 / 1920.0, -17253.0 / 339200.0, 22.0 / 525.0, -1.0 / 40.0];

const SAFETY: f64 = 0.9;
const BETA: f64 = 0.04;
const FAC_MIN: f64 = 0.2;
const FAC_MAX: f64 = 10.0;
const MAX_STEPS: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdaptiveReport {
    pub accepted: usize,
    pub rejected: usize,
    /// Smallest `q` over accepted step endpoints and the returned state.
    pub min_q: f64,
    pub min_h: f64,
    /// Step size proposed for the next call.
    pub next_h: f64,
}

fn rhs(state: &LagrangianState) -> Tangent {
    let (terms, _) = source_terms(state);
    vector_field_full(state, &terms)
}

fn combine(base: &LagrangianState, h: f64, coeffs: &[f64], ks: &[Tangent]) -> LagrangianState {
    let mut out = base.clone();
    for (c, k) in coeffs.iter().zip(ks) {
        if *c != 0.0 {
            for (dst, src) in out.fields_mut().into_iter().zip(k.fields()) {
                dst.iter_mut().zip(src).for_each(|(x, r)| *x += h * c * r);
            }
        }
    }
    out
}

fn scaled_norm(y0: &LagrangianState, y1: &LagrangianState, err: &LagrangianState, cfg: &StepperConfig) -> f64 {
    let mut sum = 0.0;
    let mut count = 0usize;
    for ((a, b), e) in y0.fields().into_iter().zip(y1.fields()).zip(err.fields()) {
        for ((x0, x1), ex) in a.iter().zip(b).zip(e) {
            let sc = cfg.rk_abs_tol + cfg.rk_rel_tol * x0.abs().max(x1.abs());
            sum += (ex / sc).powi(2);
            count += 1;
        }
    }
    (sum / count.max(1) as f64).sqrt()
}

fn initial_step(y0: &LagrangianState, f0: &Tangent, span: f64, cfg: &StepperConfig) -> f64 {
    let as_state = |t: &Tangent| {
        let mut s = y0.clone();
        for (dst, src) in s.fields_mut().into_iter().zip(t.fields()) {
            dst.copy_from_slice(src);
        }
        s
    };
    let f0s = as_state(f0);
    let d0 = scaled_norm(y0, y0, y0, cfg);
    let d1 = scaled_norm(y0, y0, &f0s, cfg);
    let mut h0 = if d0 < 1e-5 || d1 < 1e-5 { 1e-6 } else { 0.01 * d0 / d1 };
    h0 = h0.min(span);
    let y1 = y0.add_scaled(h0, f0);
    let f1 = rhs(&y1);
    let mut df = f1.clone();
    for (dst, src) in df.fields_mut().into_iter().zip(f0.fields()) {
        dst.iter_mut().zip(src).for_each(|(a, b)| *a -= b);
    }
    let d2 = scaled_norm(y0, y0, &as_state(&df), cfg) / h0;
    let h1 = if d1.max(d2) <= 1e-15 { (h0 * 1e-3).max(1e-6) } else { (0.01 / d1.max(d2)).powf(0.2) };
    (100.0 * h0).min(h1).min(span)
}

/// Dense-output weights of the 4th order continuous extension.
const D: [f64; 7] = [
    -12715105075.0 / 11282082432.0,
    0.0,
    87487479700.0 / 32700410799.0,
    -10690763975.0 / 1880347072.0,
    701980252875.0 / 199316789632.0,
    -1453857185.0 / 822651844.0,
    69997945.0 / 29380423.0,
];

/// Coefficients of the interpolant over the last accepted step.
#[derive(Debug, Clone)]
struct Dense {
    t0: f64,
    h: f64,
    r1: LagrangianState,
    r: [Tangent; 4],
}

impl Dense {
    fn build(y0: &LagrangianState, y1: &LagrangianState, t0: f64, h: f64, ks: &[Tangent]) -> Self {
        let n = y0.cells();
        let mut r = [Tangent::zeros(n), Tangent::zeros(n), Tangent::zeros(n), Tangent::zeros(n)];
        let (a0, a1) = (y0.fields(), y1.fields());
        let k1 = ks[0].fields();
        let k7 = ks[6].fields();
        for f in 0..6 {
            for i in 0..n {
                let ydiff = a1[f][i] - a0[f][i];
                let bspl = h * k1[f][i] - ydiff;
                r[0].fields_mut()[f][i] = ydiff;
                r[1].fields_mut()[f][i] = bspl;
                r[2].fields_mut()[f][i] = ydiff - h * k7[f][i] - bspl;
                r[3].fields_mut()[f][i] = h * D.iter().zip(ks).map(|(d, k)| d * k.fields()[f][i]).sum::<f64>();
            }
        }
        Self { t0, h, r1: y0.clone(), r }
    }

    fn eval(&self, t: f64) -> LagrangianState {
        let th = (t - self.t0) / self.h;
        let th1 = 1.0 - th;
        let mut out = self.r1.clone();
        let [r2, r3, r4, r5] = [&self.r[0], &self.r[1], &self.r[2], &self.r[3]];
        for (f, dst) in out.fields_mut().into_iter().enumerate() {
            for (i, x) in dst.iter_mut().enumerate() {
                let inner = r4.fields()[f][i] + th1 * r5.fields()[f][i];
                *x += th * (r2.fields()[f][i] + th1 * (r3.fields()[f][i] + th * inner));
            }
        }
        out
    }
}

/// Free-running DOPRI5 integrator of the full field on `[t0, t_end]`.
///
/// Steps are never shortened to hit output times; states in between come
/// from the continuous extension, as in common ODE suites.
#[derive(Debug, Clone)]
pub struct AdaptiveIntegrator {
    y: LagrangianState,
    t: f64,
    t_end: f64,
    h: f64,
    k_first: Tangent,
    fac_old: f64,
    last_rejected: bool,
    dense: Option<Dense>,
    cfg: StepperConfig,
}

fn q_min(s: &LagrangianState) -> f64 {
    s.v.iter().fold(f64::INFINITY, |m, v| m.min(1.0 + v))
}

fn h_min(s: &LagrangianState) -> f64 {
    s.h.iter().copied().fold(f64::INFINITY, f64::min)
}

impl AdaptiveIntegrator {
    pub fn new(state: &LagrangianState, t0: f64, t_end: f64, h_guess: Option<f64>, cfg: &StepperConfig) -> Self {
        let k_first = rhs(state);
        let span = (t_end - t0).max(0.0);
        let h = match h_guess {
            Some(h) if h > 0.0 => h.min(span),
            _ if span > 0.0 => initial_step(state, &k_first, span, cfg),
            _ => 0.0,
        };
        Self { y: state.clone(), t: t0, t_end, h, k_first, fac_old: 1e-4, last_rejected: false, dense: None, cfg: *cfg }
    }

    pub fn time(&self) -> f64 {
        self.t
    }

    /// Current step-size proposal.
    pub fn step_size(&self) -> f64 {
        self.h
    }

    fn done(&self) -> bool {
        self.t_end - self.t <= 1e-14 * self.t_end.abs().max(1.0)
    }

    /// One accepted step (with any number of rejections before it).
    fn step(&mut self, report: &mut AdaptiveReport) -> Result<()> {
        for _ in 0..MAX_STEPS {
            let mut h = self.h;
            if h < 1e-14 * self.t.abs().max(1.0) {
                return Err(Error::StepSizeUnderflow { t: self.t, h });
            }
            let last = self.t + h >= self.t_end;
            if last {
                h = self.t_end - self.t;
            }

            let mut ks: Vec<Tangent> = Vec::with_capacity(7);
            ks.push(self.k_first.clone());
            for stage in 1..7 {
                let ys = combine(&self.y, h, A[stage], &ks);
                ks.push(rhs(&ys));
            }
            let y_new = combine(&self.y, h, A[6], &ks);
            let err_state = combine(&LagrangianState::zero(self.y.grid, self.y.params), h, &E, &ks);
            let err = scaled_norm(&self.y, &y_new, &err_state, &self.cfg);
            if !err.is_finite() {
                self.h = h * FAC_MIN;
                report.rejected += 1;
                self.last_rejected = true;
                continue;
            }

            let fac11 = err.powf(0.2 - 0.75 * BETA);
            if err <= 1.0 {
                let fac = (fac11 / self.fac_old.powf(BETA) / SAFETY).clamp(1.0 / FAC_MAX, 1.0 / FAC_MIN);
                let mut h_new = h / fac;
                if self.last_rejected {
                    h_new = h_new.min(h);
                }
                self.fac_old = err.max(1e-4);
                self.dense = Some(Dense::build(&self.y, &y_new, self.t, h, &ks));
                self.t = if last { self.t_end } else { self.t + h };
                self.y = y_new;
                self.k_first = ks.swap_remove(6);
                // a step clipped to the end point should not shrink later proposals
                self.h = if last { h_new.max(self.h) } else { h_new };
                self.last_rejected = false;
                report.accepted += 1;
                report.min_q = report.min_q.min(q_min(&self.y));
                report.min_h = report.min_h.min(h_min(&self.y));
                return Ok(());
            }
            self.h = h / (fac11 / SAFETY).min(1.0 / FAC_MIN);
            report.rejected += 1;
            self.last_rejected = true;
        }
        Err(Error::StepSizeUnderflow { t: self.t, h: self.h })
    }

    /// Integrates until `t_out` has been passed and returns the state there.
    pub fn advance_to(&mut self, t_out: f64) -> Result<(LagrangianState, AdaptiveReport)> {
        let t_out = t_out.min(self.t_end);
        let mut report =
            AdaptiveReport { accepted: 0, rejected: 0, min_q: f64::INFINITY, min_h: f64::INFINITY, next_h: self.h };
        while self.t < t_out && !self.done() {
            self.step(&mut report)?;
        }
        report.next_h = self.h;
        let at_end = (self.t - t_out).abs() <= 1e-14 * t_out.abs().max(1.0);
        let out = match &self.dense {
            Some(d) if !at_end && t_out >= d.t0 => d.eval(t_out),
            _ => self.y.clone(),
        };
        report.min_q = report.min_q.min(q_min(&out));
        report.min_h = report.min_h.min(h_min(&out));
        Ok((out, report))
    }
}

/// Integrates the full field from `t0` to `t_target` with adaptive steps.
///
/// `h_guess` seeds the step size; pass `None` to estimate it.
pub fn step_adaptive_rk(
    state: &LagrangianState,
    t0: f64,
    t_target: f64,
    h_guess: Option<f64>,
    cfg: &StepperConfig,
) -> Result<(LagrangianState, AdaptiveReport)> {
    if t_target <= t0 {
        let report = AdaptiveReport {
            accepted: 0,
            rejected: 0,
            min_q: q_min(state),
            min_h: h_min(state),
            next_h: h_guess.unwrap_or(0.0),
        };
        return Ok((state.clone(), report));
    }
    let mut integ = AdaptiveIntegrator::new(state, t0, t_target, h_guess, cfg);
    integ.advance_to(t_target)
}
