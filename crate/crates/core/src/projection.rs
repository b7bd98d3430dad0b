//! Constrained information projection: infima of D(Q || G_m) over divergence
//! balls and over complements of ball unions.
//!
//! The ball projection walks the tilted (geometric-mixture) family
//! `Q_a(x) ~ center(x)^a * target(x)^(1-a)`, on which the KKT stationarity
//! conditions hold, and pins the constraint by bisection. Complement infima
//! have no convex structure; the binary alphabet gets an exact interval
//! decomposition, larger alphabets a dense grid scan refined by boundary
//! projections. A brute-force grid oracle serves as independent ground truth
//! for the ball projection.

use crate::error::Error;
use crate::num::{ExtReal, LogBase};
use crate::prob::{for_each_type, type_count, Distribution};

/// Bisection stops when the constraint value is within this of the radius.
pub const BISECTION_TOLERANCE: f64 = 1e-12;

/// Iteration cap; exceeding it is a hard error, never a silent acceptance.
pub const MAX_BISECTION_ITERATIONS: usize = 200;

/// Slack used when checking a computed boundary point against the other
/// constraints of a complement region.
const FEASIBILITY_SLACK: f64 = 1e-11;

/// A divergence ball `{Q : D(Q || center) <= radius}`.
#[derive(Debug, Clone)]
pub struct BallConstraint {
    center: Distribution,
    radius: f64,
}

impl BallConstraint {
    pub fn new(center: Distribution, radius: f64) -> Result<BallConstraint, Error> {
        if !(radius.is_finite() && radius >= 0.0) {
            return Err(Error::InvalidRadius { radius });
        }
        Ok(BallConstraint { center, radius })
    }

    pub fn center(&self) -> &Distribution {
        &self.center
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }
}

/// Outcome of a ball projection.
#[derive(Debug, Clone)]
pub struct ProjectionResult {
    /// The infimum of D(Q || target) over the ball.
    pub value: ExtReal,
    /// A minimizer, when one exists with finite value.
    pub argmin: Option<Distribution>,
    /// Whether the ball constraint is tight at the optimum.
    pub active: bool,
}

/// Outcome of a complement infimum.
#[derive(Debug, Clone)]
pub struct ComplementResult {
    /// The infimum of D(Q || target) over the closure of the complement.
    pub value: ExtReal,
    /// Set when the balls cover the whole simplex (the region is empty);
    /// the value is then reported as infinite.
    pub region_empty: bool,
    /// A witness point attaining the infimum, when finite.
    pub argmin: Option<Distribution>,
}

/// `inf D(Q || target)` over `{Q : D(Q || center) <= radius}`.
///
/// If the target already lies in the ball the infimum is 0 and the constraint
/// inactive; otherwise the minimizer sits on the ball boundary along the
/// tilted family between the two distributions and is located by bisection to
/// [`BISECTION_TOLERANCE`] on the constraint value.
pub fn min_div_in_ball(
    target: &Distribution,
    ball: &BallConstraint,
    base: LogBase,
) -> Result<ProjectionResult, Error> {
    target.same_alphabet(&ball.center)?;
    let d_tc = crate::prob::kl_divergence(target, &ball.center, base)?;
    if d_tc <= ExtReal::finite(ball.radius) {
        return Ok(ProjectionResult {
            value: ExtReal::ZERO,
            argmin: Some(target.clone()),
            active: false,
        });
    }

    // A zero-radius ball is the singleton {center}: the divergence vanishes
    // only there. Solved directly, since the constraint gradient degenerates
    // at the center and bisection would lose precision in the value.
    if ball.radius <= BISECTION_TOLERANCE {
        let value = crate::prob::kl_divergence(&ball.center, target, base)?;
        return Ok(ProjectionResult {
            argmin: value.is_finite().then(|| ball.center.clone()),
            value,
            active: true,
        });
    }

    let family = match Tilted::between(&ball.center, target) {
        Some(f) => f,
        None => return Err(Error::DisjointSupports),
    };

    // Divergence from the family to the center falls from D(t~ || c) at a=0
    // to -log c(S) at a=1, where S is the common support and t~ the target
    // conditioned on S. A radius below the a=1 end means no distribution
    // supported inside the center's support fits in the ball, so every ball
    // point has infinite divergence to the target.
    let at_one = family.div_to_center(1.0, base);
    if ball.radius < at_one - BISECTION_TOLERANCE {
        return Ok(ProjectionResult {
            value: ExtReal::Inf,
            argmin: None,
            active: false,
        });
    }

    let at_zero = family.div_to_center(0.0, base);
    if at_zero <= ball.radius {
        // Only reachable when the target has mass outside the center's
        // support: the restricted target is the unconstrained minimizer.
        let q = family.point(0.0);
        let value = kl_slice(&q, target.probs(), base);
        return Ok(ProjectionResult {
            active: (at_zero - ball.radius).abs() <= 1e-9,
            argmin: Some(Distribution::new(q).expect("family point is a distribution")),
            value,
        });
    }

    // f(0) > radius >= f(1), f continuous and nonincreasing: bisect.
    let mut lo = 0.0f64;
    let mut hi = 1.0f64;
    for _ in 0..MAX_BISECTION_ITERATIONS {
        let mid = 0.5 * (lo + hi);
        let f_mid = family.div_to_center(mid, base);
        if (f_mid - ball.radius).abs() <= BISECTION_TOLERANCE {
            let q = family.point(mid);
            let value = kl_slice(&q, target.probs(), base);
            return Ok(ProjectionResult {
                value,
                argmin: Some(Distribution::new(q).expect("family point is a distribution")),
                active: true,
            });
        }
        if f_mid > ball.radius {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Err(Error::ConvergenceFailure {
        iterations: MAX_BISECTION_ITERATIONS,
        tolerance: BISECTION_TOLERANCE,
    })
}

/// Brute-force verifier for [`min_div_in_ball`]: scans every simplex grid
/// point with denominator `round(1/grid_step)` and takes the minimum over the
/// ball. Exhaustive, so limited to alphabets of size 2 and 3.
///
/// The returned minimum is an upper bound on the true infimum, within the
/// Lipschitz slack of the grid.
pub fn min_div_in_ball_oracle(
    target: &Distribution,
    ball: &BallConstraint,
    base: LogBase,
    grid_step: f64,
) -> Result<ExtReal, Error> {
    target.same_alphabet(&ball.center)?;
    let size = target.alphabet_size();
    if size > 3 {
        return Err(Error::AlphabetTooLargeForGrid { size });
    }
    if !(grid_step > 0.0 && grid_step <= 1e-3) {
        return Err(Error::InvalidGridStep {
            step: grid_step,
            max: 1e-3,
        });
    }
    let n = (1.0 / grid_step).round() as u64;
    let mut best = ExtReal::Inf;
    for_each_type(n, size, |counts| {
        if let Some(d_c) = kl_counts(counts, &ball.center, base) {
            if d_c <= ball.radius {
                if let Some(d_t) = kl_counts(counts, target, base) {
                    best = best.min(ExtReal::finite(d_t));
                }
            }
        }
    });
    Ok(best)
}

/// `inf D(Q || target)` over the closure of
/// `{Q : D(Q || center_l) > radius_l for every l}`.
///
/// Binary alphabets are solved exactly by decomposing the complement into
/// intervals; larger alphabets combine a dense grid scan with boundary
/// projections onto each ball, at the documented grid resolution.
pub fn min_div_in_complement(
    target: &Distribution,
    balls: &[BallConstraint],
    base: LogBase,
) -> Result<ComplementResult, Error> {
    if balls.is_empty() {
        return Err(Error::EmptyBallList);
    }
    for b in balls {
        target.same_alphabet(&b.center)?;
    }

    // The target itself in the closed complement: infimum 0.
    let mut inside = false;
    for b in balls {
        let d = crate::prob::kl_divergence(target, &b.center, base)?;
        if d < ExtReal::finite(b.radius) {
            inside = true;
            break;
        }
    }
    if !inside {
        return Ok(ComplementResult {
            value: ExtReal::ZERO,
            region_empty: false,
            argmin: Some(target.clone()),
        });
    }

    if target.alphabet_size() == 2 {
        return Ok(binary_complement(target, balls, base));
    }
    general_complement(target, balls, base)
}

/// The inverse reliability function: `inf D(Q || l_dist)` over
/// `{Q : D(Q || m_dist) <= given}` — the ball projection with roles swapped.
pub fn inverse_reliability(
    given: f64,
    m_dist: &Distribution,
    l_dist: &Distribution,
    base: LogBase,
) -> Result<ExtReal, Error> {
    let ball = BallConstraint::new(m_dist.clone(), given)?;
    Ok(min_div_in_ball(l_dist, &ball, base)?.value)
}

// --- tilted family -------------------------------------------------------

/// The geometric-mixture family `Q_a ~ c^a * t^(1-a)` on the common support
/// of `c` and `t`, extended to any real exponent.
struct Tilted {
    size: usize,
    support: Vec<usize>,
    ln_c: Vec<f64>,
    ln_t: Vec<f64>,
    c: Vec<f64>,
}

impl Tilted {
    fn between(c: &Distribution, t: &Distribution) -> Option<Tilted> {
        let support: Vec<usize> = (0..c.alphabet_size())
            .filter(|&x| c.prob(x) > 0.0 && t.prob(x) > 0.0)
            .collect();
        if support.is_empty() {
            return None;
        }
        Some(Tilted {
            size: c.alphabet_size(),
            ln_c: support.iter().map(|&x| c.prob(x).ln()).collect(),
            ln_t: support.iter().map(|&x| t.prob(x).ln()).collect(),
            c: c.probs().to_vec(),
            support,
        })
    }

    /// The family member at exponent `alpha`, as a full-length probability
    /// vector (zeros off the common support).
    fn point(&self, alpha: f64) -> Vec<f64> {
        let logits: Vec<f64> = self
            .ln_c
            .iter()
            .zip(&self.ln_t)
            .map(|(&lc, &lt)| alpha * lc + (1.0 - alpha) * lt)
            .collect();
        let z = log_sum_exp(&logits);
        let mut probs = vec![0.0; self.size];
        for (i, &x) in self.support.iter().enumerate() {
            probs[x] = (logits[i] - z).exp();
        }
        probs
    }

    /// D(Q_alpha || c) in the given base; finite by construction.
    fn div_to_center(&self, alpha: f64, base: LogBase) -> f64 {
        let q = self.point(alpha);
        let mut nats = 0.0;
        for &x in &self.support {
            let qx = q[x];
            if qx > 0.0 {
                nats += qx * (qx / self.c[x]).ln();
            }
        }
        base.from_nats(nats).max(0.0)
    }
}

fn log_sum_exp(v: &[f64]) -> f64 {
    let m = v.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if m == f64::NEG_INFINITY {
        return m;
    }
    m + v.iter().map(|&x| (x - m).exp()).sum::<f64>().ln()
}

/// D(q || g) for raw slices; `ExtReal::Inf` on support violation.
fn kl_slice(q: &[f64], g: &[f64], base: LogBase) -> ExtReal {
    let mut nats = 0.0;
    for (&qi, &gi) in q.iter().zip(g) {
        if qi == 0.0 {
            continue;
        }
        if gi == 0.0 {
            return ExtReal::Inf;
        }
        nats += qi * (qi / gi).ln();
    }
    ExtReal::finite(base.from_nats(nats).max(0.0))
}

/// D(counts/n || g), or `None` when infinite. Allocation-free for grid scans.
fn kl_counts(counts: &[u64], g: &Distribution, base: LogBase) -> Option<f64> {
    let n: u64 = counts.iter().sum();
    let n_f = n as f64;
    let mut nats = 0.0;
    for (&c, &gi) in counts.iter().zip(g.probs()) {
        if c == 0 {
            continue;
        }
        if gi == 0.0 {
            return None;
        }
        let qi = c as f64 / n_f;
        nats += qi * (qi / gi).ln();
    }
    Some(base.from_nats(nats).max(0.0))
}

// --- binary complement (exact) -------------------------------------------

/// On the binary simplex `q -> (q, 1-q)`, each ball is an interval around its
/// center. The closed complement is a finite union of intervals whose
/// endpoints are ball boundary points or the simplex vertices, and the convex
/// divergence to the target attains its minimum over each interval at an
/// endpoint (the interior case is handled before we get here).
fn binary_complement(
    target: &Distribution,
    balls: &[BallConstraint],
    base: LogBase,
) -> ComplementResult {
    let mut intervals: Vec<(f64, f64)> = Vec::with_capacity(balls.len());
    let mut candidates: Vec<f64> = vec![0.0, 1.0];
    for b in balls {
        let (qa, qb) = binary_ball_interval(&b.center, b.radius, base);
        intervals.push((qa, qb));
        candidates.push(qa);
        candidates.push(qb);
    }

    // Region emptiness: do the merged intervals cover [0, 1]?
    intervals.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut covered_to = f64::NEG_INFINITY;
    let mut covers_all = true;
    for &(a, bb) in &intervals {
        if a > covered_to + 1e-12 && a > 1e-12 {
            covers_all = false;
            break;
        }
        if covered_to == f64::NEG_INFINITY && a > 1e-12 {
            covers_all = false;
            break;
        }
        covered_to = covered_to.max(bb);
    }
    if covers_all && covered_to >= 1.0 - 1e-12 {
        return ComplementResult {
            value: ExtReal::Inf,
            region_empty: true,
            argmin: None,
        };
    }

    let mut best = ExtReal::Inf;
    let mut best_q: Option<Distribution> = None;
    for &q in &candidates {
        let Ok(point) = Distribution::new(vec![q, 1.0 - q]) else {
            continue;
        };
        let feasible = balls.iter().all(|b| {
            match crate::prob::kl_divergence(&point, &b.center, base)
                .expect("same alphabet by construction")
            {
                ExtReal::Inf => true,
                ExtReal::Finite(d) => d >= b.radius - FEASIBILITY_SLACK,
            }
        });
        if !feasible {
            continue;
        }
        let d = kl_slice(point.probs(), target.probs(), base);
        if d < best {
            best = d;
            best_q = Some(point);
        }
    }

    ComplementResult {
        region_empty: best_q.is_none() && best == ExtReal::Inf && covers_all,
        value: best,
        argmin: best_q,
    }
}

/// The interval `{q : D((q, 1-q) || c) <= r}` on `[0, 1]`; the divergence is
/// convex in `q` with minimum 0 at the center, so each side is a monotone
/// bisection.
fn binary_ball_interval(c: &Distribution, r: f64, base: LogBase) -> (f64, f64) {
    let c0 = c.prob(0);
    let div_at = |q: f64| kl_slice(&[q, 1.0 - q], c.probs(), base);

    let upper = match div_at(1.0) {
        ExtReal::Finite(d) if d <= r => 1.0,
        _ => bisect_q(c0, 1.0, r, &div_at),
    };
    let lower = match div_at(0.0) {
        ExtReal::Finite(d) if d <= r => 0.0,
        _ => bisect_q(c0, 0.0, r, &div_at),
    };
    (lower, upper)
}

/// Finds `q` between `inside` (divergence <= r) and `outside`
/// (divergence > r) with divergence r, to 1e-15 in `q`.
fn bisect_q(mut inside: f64, mut outside: f64, r: f64, div_at: &dyn Fn(f64) -> ExtReal) -> f64 {
    for _ in 0..80 {
        let mid = 0.5 * (inside + outside);
        let d = div_at(mid);
        if d <= ExtReal::finite(r) {
            inside = mid;
        } else {
            outside = mid;
        }
        if (outside - inside).abs() < 1e-15 {
            break;
        }
    }
    inside
}

// --- general complement (grid + boundary refinement) ----------------------

/// Grid denominator for the scan: the finest n (capped at 1000) whose type
/// count stays within a 2e6-point budget. For the ternary simplex this is the
/// 1e-3 grid.
fn grid_denominator(alphabet_size: usize) -> u64 {
    const BUDGET: u128 = 2_200_000;
    let mut n = 1000u64;
    while n > 2 && type_count(n, alphabet_size) > BUDGET {
        n = n * 9 / 10;
    }
    n
}

fn general_complement(
    target: &Distribution,
    balls: &[BallConstraint],
    base: LogBase,
) -> Result<ComplementResult, Error> {
    let size = target.alphabet_size();
    let n = grid_denominator(size);
    let n_f = n as f64;

    // Dense scan over the closed complement.
    let mut best = ExtReal::Inf;
    let mut best_counts: Option<Vec<u64>> = None;
    let mut any_feasible = false;
    for_each_type(n, size, |counts| {
        for b in balls {
            match kl_counts(counts, &b.center, base) {
                Some(d) if d >= b.radius => {}
                None => {}
                _ => return,
            }
        }
        any_feasible = true;
        if let Some(d_t) = kl_counts(counts, target, base) {
            if ExtReal::finite(d_t) < best {
                best = ExtReal::finite(d_t);
                best_counts = Some(counts.to_vec());
            }
        }
    });
    let mut best_point = best_counts.map(|counts| {
        Distribution::new(counts.iter().map(|&c| c as f64 / n_f).collect())
            .expect("grid point is a distribution")
    });

    // Boundary projections: the optimum exits through some ball boundary;
    // project the target onto each boundary and keep feasible witnesses.
    for (l, b) in balls.iter().enumerate() {
        for witness in boundary_projections(target, b, base)? {
            let feasible = balls.iter().enumerate().all(|(j, other)| {
                if j == l {
                    return true;
                }
                match crate::prob::kl_divergence(&witness, &other.center, base)
                    .expect("same alphabet by construction")
                {
                    ExtReal::Inf => true,
                    ExtReal::Finite(d) => d >= other.radius - FEASIBILITY_SLACK,
                }
            });
            if !feasible {
                continue;
            }
            any_feasible = true;
            let d = kl_slice(witness.probs(), target.probs(), base);
            if d < best {
                best = d;
                best_point = Some(witness);
            }
        }
    }

    if !any_feasible {
        return Ok(ComplementResult {
            value: ExtReal::Inf,
            region_empty: true,
            argmin: None,
        });
    }
    Ok(ComplementResult {
        value: best,
        region_empty: false,
        argmin: best_point,
    })
}

/// Points on the boundary `{D(Q || center) = radius}` that minimize
/// D(Q || target) locally: the tilted-family crossing when target and center
/// differ, and a fan of ray crossings when the target is the center itself.
fn boundary_projections(
    target: &Distribution,
    ball: &BallConstraint,
    base: LogBase,
) -> Result<Vec<Distribution>, Error> {
    let mut out = Vec::new();
    if target.linf_distance(&ball.center) < 1e-12 {
        // Exit from the own ball: cast rays from the center toward each
        // simplex vertex and bisect to the boundary.
        let size = target.alphabet_size();
        for vertex in 0..size {
            let mut v = vec![0.0; size];
            v[vertex] = 1.0;
            if let Some(w) = ray_to_boundary(&ball.center, &v, ball.radius, base) {
                out.push(w);
            }
        }
        return Ok(out);
    }

    let d_tc = crate::prob::kl_divergence(target, &ball.center, base)?;
    if d_tc > ExtReal::finite(ball.radius) {
        // Target outside: the inward projection is the ball minimizer.
        if let Some(p) = min_div_in_ball(target, ball, base)?.argmin {
            out.push(p);
        }
        return Ok(out);
    }

    // Target strictly inside: extend the tilted family away from the center
    // (negative exponents) until the boundary is crossed, then bisect.
    let family = match Tilted::between(&ball.center, target) {
        Some(f) => f,
        None => return Ok(out),
    };
    let mut beta_out = -1.0f64;
    let mut crossed = false;
    for _ in 0..60 {
        if family.div_to_center(beta_out, base) >= ball.radius {
            crossed = true;
            break;
        }
        beta_out *= 2.0;
    }
    if !crossed {
        // The extended family never leaves the ball (its divergence to the
        // center saturates below the radius); the grid scan is the fallback.
        return Ok(out);
    }
    let mut lo = beta_out; // divergence >= radius
    let mut hi = beta_out / 2.0; // divergence < radius
    for _ in 0..MAX_BISECTION_ITERATIONS {
        let mid = 0.5 * (lo + hi);
        let f_mid = family.div_to_center(mid, base);
        if (f_mid - ball.radius).abs() <= BISECTION_TOLERANCE {
            out.push(Distribution::new(family.point(mid)).expect("family point"));
            return Ok(out);
        }
        if f_mid >= ball.radius {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    // Keep the closest bracket end as an approximate witness.
    out.push(Distribution::new(family.point(lo)).expect("family point"));
    Ok(out)
}

/// Walks from `from` toward the point `to` (a probability vector) and returns
/// the crossing of `{D(Q || from) = radius}`, if the segment crosses it.
fn ray_to_boundary(
    from: &Distribution,
    to: &[f64],
    radius: f64,
    base: LogBase,
) -> Option<Distribution> {
    let blend = |s: f64| -> Vec<f64> {
        from.probs()
            .iter()
            .zip(to)
            .map(|(&a, &b)| (1.0 - s) * a + s * b)
            .collect()
    };
    let div_at = |s: f64| kl_slice(&blend(s), from.probs(), base);
    match div_at(1.0) {
        ExtReal::Finite(d) if d < radius => return None,
        _ => {}
    }
    let mut lo = 0.0f64; // inside
    let mut hi = 1.0f64; // outside or boundary
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        match div_at(mid) {
            ExtReal::Finite(d) if d <= radius => lo = mid,
            _ => hi = mid,
        }
        if hi - lo < 1e-15 {
            break;
        }
    }
    Distribution::new(blend(lo)).ok()
}
