//! Gauss–Legendre quadrature on the reference interval and composite rules
//! over the knot spans of a basis, so that the piecewise-polynomial
//! integrands of the bilinear forms are integrated exactly.

use crate::error::{Error, Result};

/// Largest supported point count per direction.
pub const MAX_POINTS: usize = 32;

/// A Gauss–Legendre rule on the reference interval `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct QuadratureRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl QuadratureRule {
    /// Gauss–Legendre rule with `count` points, exact for polynomials of
    /// degree `2 * count - 1`.
    ///
    /// Nodes are the roots of the Legendre polynomial `P_count`, located by
    /// Newton iteration from Chebyshev initial guesses; weights are
    /// `2 / ((1 - x^2) P'(x)^2)`.
    pub fn gauss_legendre(count: usize) -> Result<Self> {
        if count == 0 || count > MAX_POINTS {
            return Err(Error::invalid(format!(
                "quadrature point count must be in 1..={MAX_POINTS}, got {count}"
            )));
        }
        let n = count;
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        // Roots come in symmetric pairs; solve for the non-negative half.
        for k in 0..n.div_ceil(2) {
            // Chebyshev-like initial guess for the (n-1-k)-th root in
            // descending order, which lies in [0, 1).
            let mut x = (std::f64::consts::PI * (k as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() <= 1e-15 {
                    let (p2, d2) = legendre_with_derivative(n, x);
                    dp = d2;
                    x -= p2 / d2;
                    break;
                }
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[n - 1 - k] = x;
            weights[n - 1 - k] = w;
            nodes[k] = -x;
            weights[k] = w;
        }
        if n % 2 == 1 {
            // The middle node of an odd rule sits exactly at the origin.
            nodes[n / 2] = 0.0;
        }
        Ok(QuadratureRule { nodes, weights })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Nodes and weights mapped to the physical interval `[a, b]`.
    pub fn mapped(&self, a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let mid = 0.5 * (a + b);
        let half = 0.5 * (b - a);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(move |(&x, &w)| (mid + half * x, w * half))
    }
}

/// Legendre polynomial `P_n(x)` and its derivative by the three-term
/// recurrence.
fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for j in 2..=n {
        let jf = j as f64;
        let p2 = ((2.0 * jf - 1.0) * x * p1 - (jf - 1.0) * p0) / jf;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Composite quadrature of `f` over consecutive spans of `breaks`.
///
/// `breaks` must be strictly increasing and contain every site where the
/// integrand loses smoothness; the result is then exact whenever `f` is
/// polynomial of degree `2 * rule.len() - 1` on each span. Spans are visited
/// in order so the accumulation is deterministic.
pub fn integrate_over_spans<F>(breaks: &[f64], rule: &QuadratureRule, mut f: F) -> Result<f64>
where
    F: FnMut(f64) -> f64,
{
    if breaks.len() < 2 {
        return Err(Error::invalid(
            "integration needs at least two breakpoints".to_string(),
        ));
    }
    let mut total = 0.0;
    for span in breaks.windows(2) {
        for (x, w) in rule.mapped(span[0], span[1]) {
            total += w * f(x);
        }
    }
    Ok(total)
}

/// Composite tensor-product quadrature over the cells of a 2-D breakpoint
/// grid, cells visited in row-major order.
pub fn integrate_over_cells<F>(
    breaks_x: &[f64],
    breaks_t: &[f64],
    rule_x: &QuadratureRule,
    rule_t: &QuadratureRule,
    mut f: F,
) -> Result<f64>
where
    F: FnMut(f64, f64) -> f64,
{
    if breaks_x.len() < 2 || breaks_t.len() < 2 {
        return Err(Error::invalid(
            "integration needs at least two breakpoints per direction".to_string(),
        ));
    }
    let mut total = 0.0;
    for sx in breaks_x.windows(2) {
        for st in breaks_t.windows(2) {
            for (x, wx) in rule_x.mapped(sx[0], sx[1]) {
                for (t, wt) in rule_t.mapped(st[0], st[1]) {
                    total += wx * wt * f(x, t);
                }
            }
        }
    }
    Ok(total)
}

/// Merged, deduplicated union of two breakpoint lists.
///
/// Sites closer than `tol` collapse onto the earlier one, so integrands stay
/// polynomial per span even when the two bases use different site counts.
pub fn merge_breakpoints(a: &[f64], b: &[f64], tol: f64) -> Vec<f64> {
    let mut all: Vec<f64> = a.iter().chain(b.iter()).copied().collect();
    all.sort_by(|x, y| x.partial_cmp(y).expect("non-finite breakpoint"));
    let mut merged: Vec<f64> = Vec::with_capacity(all.len());
    for x in all {
        match merged.last() {
            Some(&last) if (x - last).abs() <= tol => {}
            _ => merged.push(x),
        }
    }
    merged
}
