//! The interaction measurement of two graphs: the sum over 1-circuits of
//! `-ln(1 - weight)`, computed either by enumerating circuits up to a length
//! bound or exactly through a log-determinant on the simplified graphs.

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{
    fmt_decimal, plug, simplify, union, AlternationAnalysis, VertexId, WeightedGraph, DEFAULT_TOL,
};
use crate::matrix::{log_det_measure, reduce_exact};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    Enumeration,
    LogDet,
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Route::Enumeration => "enum",
            Route::LogDet => "exact",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Truncation {
    pub max_len: usize,
    /// Longer circuits may exist, so the value is only a lower bound.
    pub lower_bound: bool,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Measurement {
    /// Nonnegative, possibly infinite.
    pub value: f64,
    pub route: Route,
    pub truncation: Option<Truncation>,
}

impl Measurement {
    pub fn is_infinite(&self) -> bool {
        self.value.is_infinite()
    }

    pub fn is_truncated(&self) -> bool {
        self.truncation.is_some_and(|t| t.lower_bound)
    }
}

impl fmt::Display for Measurement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "value={} route={} truncated={}",
            fmt_decimal(self.value),
            self.route,
            self.is_truncated()
        )
    }
}

/// `-ln(1 - w)`, infinite for `w >= 1`.
pub fn circuit_cost(weight: f64) -> f64 {
    if weight >= 1.0 {
        f64::INFINITY
    } else {
        -(-weight).ln_1p()
    }
}

/// Sums circuit costs over the 1-circuits of length at most `max_len`.
pub fn measure_truncated(g: &WeightedGraph, h: &WeightedGraph, max_len: usize) -> Measurement {
    let plugged = plug(g, h);
    let mut value = 0.0;
    for c in plugged.one_circuits(max_len) {
        if c.weight >= 1.0 {
            value = f64::INFINITY;
            break;
        }
        value += circuit_cost(c.weight);
    }
    let complete = AlternationAnalysis::new(&plugged)
        .circuit_length_bound()
        .is_some_and(|longest| longest <= max_len);
    Measurement {
        value,
        route: Route::Enumeration,
        truncation: Some(Truncation {
            max_len,
            lower_bound: !complete && value.is_finite(),
        }),
    }
}

/// `-ln det(I - M_g M_h)` on the simplified graphs.
pub fn measure_exact(g: &WeightedGraph, h: &WeightedGraph) -> Result<Measurement> {
    Ok(Measurement {
        value: log_det_measure(&simplify(g), &simplify(h))?,
        route: Route::LogDet,
        truncation: None,
    })
}

/// Whether `lhs = a + b`: both sides infinite together, otherwise within
/// 1e-9, absolute when every term is below 10 and relative beyond.
pub fn sum_matches(lhs: f64, a: f64, b: f64) -> bool {
    let rhs = a + b;
    if lhs.is_infinite() || rhs.is_infinite() {
        return lhs.is_infinite() && rhs.is_infinite();
    }
    let diff = (lhs - rhs).abs();
    if lhs < 10.0 && a < 10.0 && b < 10.0 {
        diff <= DEFAULT_TOL
    } else {
        diff <= DEFAULT_TOL * lhs.max(rhs)
    }
}

/// The three measurements of the adjunction and whether they agree.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Adjunction {
    /// `<F, G ∪ H>`
    pub whole: Measurement,
    /// `<F, G>`
    pub first: Measurement,
    /// `<F∷G, H>`, infinite when `<F, G>` is.
    pub second: Measurement,
    pub holds: bool,
}

/// Checks `<F, G ∪ H> = <F, G> + <F∷G, H>` for `G`, `H` with disjoint
/// carriers inside the carrier of `F`.
pub fn check_adjunction(
    f: &WeightedGraph,
    g: &WeightedGraph,
    h: &WeightedGraph,
) -> Result<Adjunction> {
    check_split_carriers(f, g, h)?;
    let whole = measure_exact(f, &union(g, h))?;
    let first = measure_exact(f, g)?;
    let second_value = if first.is_infinite() {
        f64::INFINITY
    } else {
        log_det_measure(&reduce_exact(f, g)?, &simplify(h))?
    };
    let second = Measurement {
        value: second_value,
        route: Route::LogDet,
        truncation: None,
    };
    Ok(Adjunction {
        whole,
        first,
        second,
        holds: sum_matches(whole.value, first.value, second.value),
    })
}

/// `V_G ∩ V_H = ∅` and `V_G ∪ V_H ⊆ V_F`.
pub(crate) fn check_split_carriers(
    f: &WeightedGraph,
    g: &WeightedGraph,
    h: &WeightedGraph,
) -> Result<()> {
    if let Some(&v) = g.vertices().intersection(h.vertices()).next() {
        return Err(Error::carrier(v, "shared by the two right-hand graphs"));
    }
    let outside = |v: &&VertexId| !f.contains(**v);
    if let Some(&v) = g.vertices().iter().chain(h.vertices()).find(outside) {
        return Err(Error::carrier(
            v,
            "not in the carrier of the left-hand graph",
        ));
    }
    Ok(())
}

/// Replacing `h` by its simplification leaves the exact measurement
/// unchanged, and an untruncated enumeration up to `max_len` agrees too.
pub fn check_simplify_invariance(
    g: &WeightedGraph,
    h: &WeightedGraph,
    max_len: usize,
) -> Result<bool> {
    let exact = measure_exact(g, h)?.value;
    let simplified = measure_exact(g, &simplify(h).to_multigraph()?)?.value;
    if !values_match(exact, simplified) {
        return Ok(false);
    }
    let enumerated = measure_truncated(g, h, max_len);
    Ok(enumerated.is_truncated() || values_match(enumerated.value, exact))
}

fn values_match(a: f64, b: f64) -> bool {
    sum_matches(a, b, 0.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn loop_at(v: VertexId, w: f64) -> WeightedGraph {
        WeightedGraph::new([v], [(v, v, w)]).unwrap()
    }

    #[test]
    fn disjoint_carriers_measure_zero() {
        let g = loop_at(1, 0.5);
        let h = loop_at(2, 0.5);
        let t = measure_truncated(&g, &h, 8);
        assert_eq!(t.value, 0.0);
        assert!(!t.is_truncated());
        assert_eq!(measure_exact(&g, &h).unwrap().value, 0.0);
    }

    #[test]
    fn two_loops() {
        let expected = -(0.75f64).ln();
        let t = measure_truncated(&loop_at(1, 0.5), &loop_at(1, 0.5), 8);
        assert!((t.value - expected).abs() < 1e-15);
        assert!(!t.is_truncated());
        let e = measure_exact(&loop_at(1, 0.5), &loop_at(1, 0.5)).unwrap();
        assert!((e.value - expected).abs() < 1e-15);
        assert_eq!(
            e.to_string(),
            "value=0.287682072452 route=exact truncated=false"
        );
    }

    #[test]
    fn unit_two_cycle_diverges() {
        let g = WeightedGraph::new([1, 2], [(1, 2, 1.0)]).unwrap();
        let h = WeightedGraph::new([1, 2], [(2, 1, 1.0)]).unwrap();
        assert!(measure_truncated(&g, &h, 4).is_infinite());
        assert!(measure_exact(&g, &h).unwrap().is_infinite());
    }

    #[test]
    fn adjunction_example() {
        let f = WeightedGraph::new([1, 2], [(1, 2, 0.5), (2, 1, 0.5)]).unwrap();
        let a = check_adjunction(&f, &loop_at(1, 0.5), &loop_at(2, 0.5)).unwrap();
        let expected = -(15.0f64 / 16.0).ln();
        assert!((a.whole.value - expected).abs() < 1e-12);
        assert_eq!(a.first.value, 0.0);
        assert!((a.second.value - expected).abs() < 1e-12);
        assert!(a.holds);

        let empty = WeightedGraph::empty();
        let a = check_adjunction(&f, &loop_at(1, 0.5), &empty).unwrap();
        assert_eq!(a.second.value, 0.0);
        assert!(a.holds);
    }

    #[test]
    fn adjunction_preconditions() {
        let f = WeightedGraph::on([1, 2]);
        let err = check_adjunction(&f, &loop_at(1, 0.5), &loop_at(1, 0.5)).unwrap_err();
        assert!(matches!(err, Error::Carrier { vertex: 1, .. }));
        let err = check_adjunction(&f, &loop_at(3, 0.5), &WeightedGraph::empty()).unwrap_err();
        assert!(matches!(err, Error::Carrier { vertex: 3, .. }));
    }

    #[test]
    fn parallel_loops_are_a_lower_bound() {
        let g = loop_at(1, 0.5);
        let h = WeightedGraph::new([1], [(1, 1, 0.3), (1, 1, 0.2)]).unwrap();
        let exact = -(1.0f64 - 0.25).ln();
        assert!((measure_exact(&g, &h).unwrap().value - exact).abs() < 1e-15);
        let mut last = 0.0;
        for len in (2..=16).step_by(2) {
            let t = measure_truncated(&g, &h, len);
            assert!(t.is_truncated());
            assert!(t.value >= last && t.value < exact);
            last = t.value;
        }
        assert!(check_simplify_invariance(&g, &h, 8).unwrap());
    }

    #[test]
    fn sums() {
        assert!(sum_matches(1.0, 0.5, 0.5));
        assert!(!sum_matches(1.0, 0.5, 0.4));
        assert!(sum_matches(f64::INFINITY, 0.5, f64::INFINITY));
        assert!(!sum_matches(f64::INFINITY, 0.5, 0.5));
        assert!(sum_matches(1e3, 1e3 - 1e-7, 0.0));
    }
}
