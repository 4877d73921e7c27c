//! Exact orientation-preserving piecewise-linear homeomorphisms of ℝ.
//!
//! A [`PlMap`] is the identity outside a compact interval and is stored as
//! its breakpoints `(x_i, f(x_i))`, linear in between. Maps are always kept
//! in canonical form: a breakpoint survives only where the slope actually
//! changes (the identity outside counts as slope 1), so two maps are equal
//! iff their breakpoint lists are identical.

use std::fmt;


use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rational::{self, rat, Rational};

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "PlMapJson", into = "PlMapJson")]
pub struct PlMap {
    points: Vec<(Rational, Rational)>,
}

/// Wire form: `{"bp": ["0","1/4","3/2"], "val": ["0","5/4","3/2"]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlMapJson {
    pub bp: Vec<String>,
    pub val: Vec<String>,
}

impl TryFrom<PlMapJson> for PlMap {
    type Error = Error;

    fn try_from(json: PlMapJson) -> Result<Self> {
        let bp = json
            .bp
            .iter()
            .map(|s| rational::parse(s))
            .collect::<Result<Vec<_>>>()?;
        let val = json
            .val
            .iter()
            .map(|s| rational::parse(s))
            .collect::<Result<Vec<_>>>()?;
        PlMap::from_lists(bp, val)
    }
}

impl From<PlMap> for PlMapJson {
    fn from(f: PlMap) -> Self {
        PlMapJson {
            bp: f.points.iter().map(|(x, _)| rational::format(x)).collect(),
            val: f.points.iter().map(|(_, y)| rational::format(y)).collect(),
        }
    }
}

/// A closed bounded interval `[lo, hi]` with `lo ≤ hi`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ClosedInterval {
    pub lo: Rational,
    pub hi: Rational,
}

impl ClosedInterval {
    pub fn new(lo: Rational, hi: Rational) -> Self {
        assert!(lo <= hi, "empty interval");
        ClosedInterval { lo, hi }
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn intersects(&self, other: &ClosedInterval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn is_subset_of(&self, other: &ClosedInterval) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }
}

impl fmt::Display for ClosedInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}, {}]",
            rational::format(&self.lo),
            rational::format(&self.hi)
        )
    }
}

/// A connected component of a fixed point set: a closed, possibly unbounded
/// or degenerate interval. `None` stands for an infinite end.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedComponent {
    pub lo: Option<Rational>,
    pub hi: Option<Rational>,
}

impl FixedComponent {
    pub fn is_point(&self) -> bool {
        matches!((&self.lo, &self.hi), (Some(a), Some(b)) if a == b)
    }

    pub fn contains(&self, x: &Rational) -> bool {
        self.lo.as_ref().is_none_or(|lo| lo <= x) && self.hi.as_ref().is_none_or(|hi| x <= hi)
    }
}

/// `Fix(f)` as an increasing list of disjoint closed components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedSet(pub Vec<FixedComponent>);

impl FixedSet {
    pub fn contains(&self, x: &Rational) -> bool {
        self.0.iter().any(|c| c.contains(x))
    }

    /// Appends a component lying to the right of (or touching) the last one.
    fn push(&mut self, c: FixedComponent) {
        if let Some(last) = self.0.last_mut() {
            let touches = match (&last.hi, &c.lo) {
                (None, _) | (_, None) => true,
                (Some(hi), Some(lo)) => lo <= hi,
            };
            if touches {
                last.hi = match (last.hi.take(), c.hi) {
                    (Some(a), Some(b)) => Some(a.max(b)),
                    _ => None,
                };
                return;
            }
        }
        self.0.push(c);
    }
}

fn slope(a: &(Rational, Rational), b: &(Rational, Rational)) -> Rational {
    (&b.1 - &a.1) / (&b.0 - &a.0)
}

impl PlMap {
    pub fn identity() -> Self {
        PlMap { points: Vec::new() }
    }

    /// The bump `ρ₀`: `5x` on `[0, 1/4]`, `(x+6)/5` on `[1/4, 3/2]`, the
    /// identity elsewhere. Sends `1/4` to `5/4`.
    pub fn rho0() -> Self {
        PlMap {
            points: vec![
                (rat(0, 1), rat(0, 1)),
                (rat(1, 4), rat(5, 4)),
                (rat(3, 2), rat(3, 2)),
            ],
        }
    }

    /// Builds a map from breakpoints and values.
    pub fn from_lists(bp: Vec<Rational>, val: Vec<Rational>) -> Result<Self> {
        if bp.len() != val.len() {
            return Err(Error::input(format!(
                "{} breakpoints but {} values",
                bp.len(),
                val.len()
            )));
        }
        PlMap::from_points(bp.into_iter().zip(val).collect())
    }

    /// Builds a map from `(x, f(x))` pairs, checking that both coordinates
    /// increase strictly and that the end points are fixed.
    pub fn from_points(points: Vec<(Rational, Rational)>) -> Result<Self> {
        for w in points.windows(2) {
            if w[0].0 >= w[1].0 {
                return Err(Error::input("breakpoints must be strictly increasing"));
            }
            if w[0].1 >= w[1].1 {
                return Err(Error::input(
                    "values must be strictly increasing (orientation preserving)",
                ));
            }
        }
        if let (Some(first), Some(last)) = (points.first(), points.last()) {
            if first.0 != first.1 || last.0 != last.1 {
                return Err(Error::input(
                    "first and last breakpoints must be fixed (identity tails)",
                ));
            }
        }
        Ok(PlMap::canonical(points))
    }

    /// Drops every breakpoint where the incoming and outgoing slopes agree.
    ///
    /// Collinearity of a point with its neighbours is unaffected by removing
    /// other collinear points, so one pass reaches the canonical form.
    fn canonical(points: Vec<(Rational, Rational)>) -> Self {
        let n = points.len();
        let one = Rational::one();
        let slopes: Vec<Rational> = points.windows(2).map(|w| slope(&w[0], &w[1])).collect();
        let keep: Vec<bool> = (0..n)
            .map(|i| {
                let left = if i == 0 { &one } else { &slopes[i - 1] };
                let right = if i + 1 == n { &one } else { &slopes[i] };
                left != right
            })
            .collect();
        PlMap {
            points: points
                .into_iter()
                .zip(keep)
                .filter_map(|(p, k)| k.then_some(p))
                .collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[(Rational, Rational)] {
        &self.points
    }

    pub fn breakpoints(&self) -> impl Iterator<Item = &Rational> {
        self.points.iter().map(|(x, _)| x)
    }

    /// Slopes of the pieces between consecutive breakpoints.
    pub fn slopes(&self) -> Vec<Rational> {
        self.points.windows(2).map(|w| slope(&w[0], &w[1])).collect()
    }

    fn interpolate(points: &[(Rational, Rational)], x: &Rational, inverse: bool) -> Rational {
        fn pick(p: &(Rational, Rational), inverse: bool) -> &Rational {
            if inverse {
                &p.1
            } else {
                &p.0
            }
        }
        let (first, last) = match (points.first(), points.last()) {
            (Some(a), Some(b)) => (pick(a, inverse), pick(b, inverse)),
            _ => return x.clone(),
        };
        if x <= first || x >= last {
            return x.clone();
        }
        let i = points.partition_point(|p| pick(p, inverse) <= x);
        let (a, b) = (&points[i - 1], &points[i]);
        let (ax, ay, bx, by) = if inverse {
            (&a.1, &a.0, &b.1, &b.0)
        } else {
            (&a.0, &a.1, &b.0, &b.1)
        };
        ay + (x - ax) * (by - ay) / (bx - ax)
    }

    /// `f(x)`.
    pub fn evaluate(&self, x: &Rational) -> Rational {
        PlMap::interpolate(&self.points, x, false)
    }

    /// `f⁻¹(y)`.
    pub fn evaluate_inverse(&self, y: &Rational) -> Rational {
        PlMap::interpolate(&self.points, y, true)
    }

    /// `x ↦ f(x − shift) + shift`.
    pub fn translate_conjugate(&self, shift: &Rational) -> Self {
        PlMap {
            points: self
                .points
                .iter()
                .map(|(x, y)| (x + shift, y + shift))
                .collect(),
        }
    }

    /// Conjugation by `x ↦ c·x` for `c > 0`: `x ↦ c·f(x/c)`.
    pub fn scale_conjugate(&self, c: &Rational) -> Self {
        assert!(c.is_positive(), "scale factor must be positive");
        PlMap {
            points: self.points.iter().map(|(x, y)| (x * c, y * c)).collect(),
        }
    }

    /// `x ↦ self(other(x))`.
    pub fn compose(&self, other: &PlMap) -> PlMap {
        if self.is_identity() {
            return other.clone();
        }
        if other.is_identity() {
            return self.clone();
        }
        if let Some(joined) = PlMap::join_separated(other, self).or_else(|| PlMap::join_separated(self, other)) {
            return joined;
        }
        // Breakpoints of `other`, merged with preimages of breakpoints of `self`.
        let pulled: Vec<Rational> = self
            .points
            .iter()
            .map(|(x, _)| other.evaluate_inverse(x))
            .collect();
        let mut xs: Vec<Rational> = Vec::with_capacity(pulled.len() + other.points.len());
        let (mut i, mut j) = (0, 0);
        while i < other.points.len() || j < pulled.len() {
            let take_other = j == pulled.len()
                || (i < other.points.len() && other.points[i].0 <= pulled[j]);
            let next = if take_other {
                i += 1;
                &other.points[i - 1].0
            } else {
                j += 1;
                &pulled[j - 1]
            };
            if xs.last() != Some(next) {
                xs.push(next.clone());
            }
        }
        let points = xs
            .into_iter()
            .map(|x| {
                let y = self.evaluate(&other.evaluate(&x));
                (x, y)
            })
            .collect();
        PlMap::canonical(points)
    }

    /// Composite of two maps whose supports are separated, `left` entirely
    /// below `right`: the breakpoint lists simply concatenate.
    fn join_separated(left: &PlMap, right: &PlMap) -> Option<PlMap> {
        let (last, first) = (left.points.last()?, right.points.first()?);
        (last.0 < first.0).then(|| PlMap {
            points: left.points.iter().chain(&right.points).cloned().collect(),
        })
    }

    pub fn inverse(&self) -> PlMap {
        PlMap {
            points: self
                .points
                .iter()
                .map(|(x, y)| (y.clone(), x.clone()))
                .collect(),
        }
    }

    /// `n`-fold composition; `f⁻¹` powers for negative `n`.
    pub fn power(&self, n: i64) -> PlMap {
        match n {
            0 => return PlMap::identity(),
            1 => return self.clone(),
            -1 => return self.inverse(),
            _ => {}
        }
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut acc = PlMap::identity();
        for _ in 0..n.unsigned_abs() {
            acc = acc.compose(&base);
        }
        acc
    }

    /// `{x : f(x) = x}` as closed components.
    pub fn fixed_set(&self) -> FixedSet {
        let (first, last) = match (self.points.first(), self.points.last()) {
            (Some(a), Some(b)) => (a, b),
            _ => {
                return FixedSet(vec![FixedComponent { lo: None, hi: None }]);
            }
        };
        let mut set = FixedSet(Vec::new());
        set.push(FixedComponent {
            lo: None,
            hi: Some(first.0.clone()),
        });
        for w in self.points.windows(2) {
            let (a, b) = (&w[0], &w[1]);
            let (da, db) = (&a.1 - &a.0, &b.1 - &b.0);
            if da.is_zero() && db.is_zero() {
                set.push(FixedComponent {
                    lo: Some(a.0.clone()),
                    hi: Some(b.0.clone()),
                });
            } else if da.is_zero() {
                set.push(point(&a.0));
            } else if !db.is_zero() && da.is_positive() != db.is_positive() {
                let root = &a.0 + &da * (&b.0 - &a.0) / (&da - &db);
                set.push(point(&root));
            }
        }
        set.push(FixedComponent {
            lo: Some(last.0.clone()),
            hi: None,
        });
        set
    }

    /// Closure of the moved set, as disjoint closed intervals in order.
    pub fn support(&self) -> Vec<ClosedInterval> {
        let fixed = self.fixed_set().0;
        let mut out: Vec<ClosedInterval> = Vec::new();
        for w in fixed.windows(2) {
            let lo = w[0].hi.clone().expect("only the last component is unbounded above");
            let hi = w[1].lo.clone().expect("only the first component is unbounded below");
            match out.last_mut() {
                Some(prev) if prev.hi == lo => prev.hi = hi,
                _ => out.push(ClosedInterval::new(lo, hi)),
            }
        }
        out
    }

    /// `true` iff the closed supports do not meet. Sharing an endpoint
    /// counts as meeting.
    pub fn supports_disjoint(&self, other: &PlMap) -> bool {
        let (a, b) = (self.support(), other.support());
        a.iter().all(|i| b.iter().all(|j| !i.intersects(j)))
    }

    /// `true` iff `supp(self)` lies inside the union of `intervals`.
    pub fn support_within(&self, intervals: &[ClosedInterval]) -> bool {
        // Components of the support are connected; the union may be merged
        // first so that touching intervals cover a component jointly.
        let mut sorted = intervals.to_vec();
        sorted.sort_by(|a, b| a.lo.cmp(&b.lo));
        let mut merged: Vec<ClosedInterval> = Vec::new();
        for i in sorted {
            match merged.last_mut() {
                Some(m) if i.lo <= m.hi => {
                    if i.hi > m.hi {
                        m.hi = i.hi;
                    }
                }
                _ => merged.push(i),
            }
        }
        self.support()
            .iter()
            .all(|s| merged.iter().any(|m| s.is_subset_of(m)))
    }

    pub fn commutes_with(&self, other: &PlMap) -> bool {
        self.compose(other) == other.compose(self)
    }
}

fn point(x: &Rational) -> FixedComponent {
    FixedComponent {
        lo: Some(x.clone()),
        hi: Some(x.clone()),
    }
}

/// Graph on `v1, …, vn` with an edge wherever two maps have disjoint supports.
pub fn disjointness_graph(maps: &[PlMap]) -> Graph {
    let names: Vec<String> = (1..=maps.len()).map(|i| format!("v{i}")).collect();
    let supports: Vec<Vec<ClosedInterval>> = maps.iter().map(PlMap::support).collect();
    let mut edges = Vec::new();
    for i in 0..maps.len() {
        for j in i + 1..maps.len() {
            let disjoint = supports[i]
                .iter()
                .all(|a| supports[j].iter().all(|b| !a.intersects(b)));
            if disjoint {
                edges.push((i, j));
            }
        }
    }
    Graph::from_index_edges(&names, &edges).expect("generated names are distinct")
}

impl fmt::Debug for PlMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return f.write_str("PlMap(id)");
        }
        f.write_str("PlMap(")?;
        for (i, (x, y)) in self.points.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}↦{}", rational::format(x), rational::format(y))?;
        }
        f.write_str(")")
    }
}
