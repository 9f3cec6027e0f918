//! Uhrig timing grids and the three-layer nested pulse schedule.
//!
//! The outermost layer places its pulses at T_j = T sin^2(j pi / (2N+2));
//! each deeper layer subdivides the enclosing interval with the same sine
//! fractions. Boundary conventions: T_0 = 0, T_{N+1} = T, and each child
//! grid inherits its parent segment's endpoints. The schedule is emitted by
//! depth-first recursion (outer -> middle -> inner), which reproduces the
//! canonical operator ordering: the innermost layer pulses X0, the middle
//! layer X1, the outermost layer Xphi, and no pulse fires at time T.
//!
//! For N = 2 the sine fractions are exactly {1/4, 3/4}, so every interval
//! is an exact multiple of beta = 1/64 and the schedule is built in rational
//! arithmetic. For N >= 4 the fractions are irrational and events carry f64
//! deltas only.

use std::ops::{Add, Mul, Sub};

use num_rational::Ratio;

use crate::opalgebra::ControlOpId;
use crate::{Error, Result};

/// Pulse slot in the schedule: a control operator, or the end of the run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SchedulePulse {
    Control(ControlOpId),
    End,
}

impl std::fmt::Display for SchedulePulse {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SchedulePulse::Control(id) => write!(f, "{id}"),
            SchedulePulse::End => f.write_str("End"),
        }
    }
}

/// One interval of the schedule: free evolution for `delta` (as a fraction
/// of total time), then the pulse.
#[derive(Debug, Clone)]
pub struct ScheduleEvent {
    pub delta: f64,
    /// Exact rational delta when the grid is rational (N = 2).
    pub delta_exact: Option<Ratio<i64>>,
    pub pulse: SchedulePulse,
}

/// Complete three-layer NUDD schedule for one run.
#[derive(Debug, Clone)]
pub struct NuddSchedule {
    pub order: usize,
    pub events: Vec<ScheduleEvent>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PulseCounts {
    pub x0: usize,
    pub x1: usize,
    pub xphi: usize,
}

impl PulseCounts {
    pub fn total(&self) -> usize {
        self.x0 + self.x1 + self.xphi
    }
}

impl NuddSchedule {
    /// Assemble a schedule from raw events. The deltas must sum to 1 within
    /// 1e-12 and only the final event may (and must) carry `End`.
    pub fn from_events(order: usize, events: Vec<ScheduleEvent>) -> Result<Self> {
        if events.is_empty() || events.last().unwrap().pulse != SchedulePulse::End {
            return Err(Error::InvalidPlan {
                reason: "schedule must end with an End event".into(),
            });
        }
        if events[..events.len() - 1]
            .iter()
            .any(|e| e.pulse == SchedulePulse::End)
        {
            return Err(Error::InvalidPlan {
                reason: "End may only appear as the final event".into(),
            });
        }
        let sum: f64 = events.iter().map(|e| e.delta).sum();
        if (sum - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidPlan {
                reason: format!("schedule deltas sum to {sum}, expected 1"),
            });
        }
        Ok(Self { order, events })
    }

    pub fn counts(&self) -> PulseCounts {
        let mut counts = PulseCounts {
            x0: 0,
            x1: 0,
            xphi: 0,
        };
        for e in &self.events {
            match e.pulse {
                SchedulePulse::Control(ControlOpId::X0) => counts.x0 += 1,
                SchedulePulse::Control(ControlOpId::X1) => counts.x1 += 1,
                SchedulePulse::Control(ControlOpId::Xphi) => counts.xphi += 1,
                SchedulePulse::End => {}
            }
        }
        counts
    }

    /// True when every event carries an exact rational delta.
    pub fn is_exact(&self) -> bool {
        self.events.iter().all(|e| e.delta_exact.is_some())
    }

    /// Exact rational deltas, if the whole schedule is rational.
    pub fn exact_deltas(&self) -> Option<Vec<Ratio<i64>>> {
        self.events.iter().map(|e| e.delta_exact).collect()
    }

    /// Cumulative time fraction at the end of each event.
    pub fn cumulative_fractions(&self) -> Vec<f64> {
        let mut acc = 0.0;
        self.events
            .iter()
            .map(|e| {
                acc += e.delta;
                acc
            })
            .collect()
    }
}

fn require_even_order(n: usize) -> Result<()> {
    if n < 2 || n % 2 != 0 {
        return Err(Error::InvalidOrder {
            got: n,
            reason: "NUDD order must be an even integer >= 2",
        });
    }
    Ok(())
}

/// Uhrig pulse times t_total * sin^2(j pi / (2n+2)) for j = 1..=n.
pub fn uhrig_times(n: usize, t_total: f64) -> Result<Vec<f64>> {
    if n < 1 {
        return Err(Error::InvalidOrder {
            got: n,
            reason: "Uhrig order must be >= 1",
        });
    }
    Ok(uhrig_fractions_f64(n)
        .into_iter()
        .map(|f| f * t_total)
        .collect())
}

fn uhrig_fractions_f64(n: usize) -> Vec<f64> {
    (1..=n)
        .map(|j| {
            let s = (j as f64 * std::f64::consts::PI / (2.0 * n as f64 + 2.0)).sin();
            s * s
        })
        .collect()
}

/// Three-level nested timing grid.
///
/// `outer[j-1]` = T_j; `middle[j][k-1]` = T_{j,k} inside outer segment j
/// (j = 0..=N); `inner[j][k][l-1]` = T_{j,k,l} inside middle segment (j, k).
#[derive(Debug, Clone)]
pub struct NestedGrid {
    pub outer: Vec<f64>,
    pub middle: Vec<Vec<f64>>,
    pub inner: Vec<Vec<Vec<f64>>>,
}

/// Build the full nested grid for even order `n` over [0, t_total].
pub fn nested_times(n: usize, t_total: f64) -> Result<NestedGrid> {
    require_even_order(n)?;
    let fracs = uhrig_fractions_f64(n);
    let subdivide = |lo: f64, hi: f64| -> Vec<f64> {
        fracs.iter().map(|f| lo + (hi - lo) * f).collect()
    };

    let outer = subdivide(0.0, t_total);
    let mut outer_bounds = Vec::with_capacity(n + 2);
    outer_bounds.push(0.0);
    outer_bounds.extend_from_slice(&outer);
    outer_bounds.push(t_total);

    let mut middle = Vec::with_capacity(n + 1);
    let mut inner = Vec::with_capacity(n + 1);
    for j in 0..=n {
        let (lo, hi) = (outer_bounds[j], outer_bounds[j + 1]);
        let mids = subdivide(lo, hi);
        let mut mid_bounds = Vec::with_capacity(n + 2);
        mid_bounds.push(lo);
        mid_bounds.extend_from_slice(&mids);
        mid_bounds.push(hi);

        let mut inner_j = Vec::with_capacity(n + 1);
        for k in 0..=n {
            inner_j.push(subdivide(mid_bounds[k], mid_bounds[k + 1]));
        }
        middle.push(mids);
        inner.push(inner_j);
    }
    Ok(NestedGrid {
        outer,
        middle,
        inner,
    })
}

/// Depth-first schedule emission, generic over the scalar so the N = 2 path
/// can run in exact rationals.
fn emit_events<T>(fracs: &[T], zero: T, one: T) -> (Vec<T>, Vec<SchedulePulse>)
where
    T: Copy + Add<Output = T> + Sub<Output = T> + Mul<Output = T>,
{
    let layer_pulse = [ControlOpId::Xphi, ControlOpId::X1, ControlOpId::X0];
    let mut deltas = Vec::new();
    let mut pulses = Vec::new();

    fn recurse<T>(
        lo: T,
        hi: T,
        level: usize,
        fracs: &[T],
        layer_pulse: &[ControlOpId; 3],
        deltas: &mut Vec<T>,
        pulses: &mut Vec<SchedulePulse>,
    ) where
        T: Copy + Add<Output = T> + Sub<Output = T> + Mul<Output = T>,
    {
        if level == 3 {
            deltas.push(hi - lo);
            return;
        }
        let span = hi - lo;
        let n = fracs.len();
        let mut bounds = Vec::with_capacity(n + 2);
        bounds.push(lo);
        for &f in fracs {
            bounds.push(lo + span * f);
        }
        bounds.push(hi);
        for k in 0..=n {
            recurse(
                bounds[k],
                bounds[k + 1],
                level + 1,
                fracs,
                layer_pulse,
                deltas,
                pulses,
            );
            if k < n {
                pulses.push(SchedulePulse::Control(layer_pulse[level]));
            }
        }
    }

    recurse(
        zero,
        one,
        0,
        fracs,
        &layer_pulse,
        &mut deltas,
        &mut pulses,
    );
    pulses.push(SchedulePulse::End);
    (deltas, pulses)
}

/// Build the full three-layer schedule for even order `n`.
pub fn build_nudd_schedule(n: usize) -> Result<NuddSchedule> {
    require_even_order(n)?;

    let events = if n == 2 {
        // sin^2(pi/6) = 1/4, sin^2(2 pi/6) = 3/4: exact rational grid.
        let fracs = [Ratio::new(1i64, 4), Ratio::new(3i64, 4)];
        let (deltas, pulses) =
            emit_events(&fracs, Ratio::new(0, 1), Ratio::new(1, 1));
        let sum: Ratio<i64> = deltas.iter().copied().sum();
        assert_eq!(sum, Ratio::new(1, 1), "rational deltas must sum to 1 exactly");
        deltas
            .into_iter()
            .zip(pulses)
            .map(|(d, pulse)| ScheduleEvent {
                delta: *d.numer() as f64 / *d.denom() as f64,
                delta_exact: Some(d),
                pulse,
            })
            .collect()
    } else {
        let fracs = uhrig_fractions_f64(n);
        let (deltas, pulses) = emit_events(&fracs, 0.0, 1.0);
        deltas
            .into_iter()
            .zip(pulses)
            .map(|(delta, pulse)| ScheduleEvent {
                delta,
                delta_exact: None,
                pulse,
            })
            .collect()
    };

    NuddSchedule::from_events(n, events)
}

/// Closed-form pulse count N((N+1)^2 + N + 2) for even N.
pub fn pulse_count_formula(n: usize) -> Result<usize> {
    require_even_order(n)?;
    Ok(n * ((n + 1) * (n + 1) + n + 2))
}
