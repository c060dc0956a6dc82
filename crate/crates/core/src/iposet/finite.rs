use super::{verify_iposet, Enumerable, IPoset};
use crate::report::ValidationReport;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

/// An element of a [`FiniteIPoset`], identified by its position.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point(pub usize);

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum IPosetError {
    #[error("an i-poset needs at least one element")]
    Empty,
    #[error("unknown element `{0}`")]
    UnknownLabel(String),
    #[error("element `{0}` is listed twice")]
    DuplicateLabel(String),
    #[error("not a valid i-poset:\n{0}")]
    Invalid(ValidationReport),
}

struct Tables {
    labels: Vec<String>,
    le: Vec<bool>,
    id: Vec<bool>,
    merge: Option<Vec<Option<usize>>>,
    least: Option<usize>,
}

/// An i-poset with an explicit carrier and explicit relation tables.
///
/// Built through [`FiniteIPosetBuilder`], which adds the reflexive pairs of
/// both relations and validates every axiom eagerly. Cloning is cheap.
#[derive(Clone)]
pub struct FiniteIPoset {
    t: Arc<Tables>,
}

impl fmt::Debug for FiniteIPoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteIPoset")
            .field("elements", &self.t.labels)
            .field("le", &self.le_pairs().collect::<Vec<_>>())
            .field("identical", &self.identical_pairs().collect::<Vec<_>>())
            .field("merge", &self.merge_triples().collect::<Vec<_>>())
            .finish()
    }
}

impl PartialEq for FiniteIPoset {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.t, &other.t)
            || (self.t.labels == other.t.labels
                && self.t.le == other.t.le
                && self.t.id == other.t.id
                && self.t.merge == other.t.merge)
    }
}

impl FiniteIPoset {
    pub fn builder<I, S>(labels: I) -> FiniteIPosetBuilder
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        FiniteIPosetBuilder::new(labels.into_iter().map(Into::into).collect())
    }

    /// A discrete i-poset: `≤` and `I` are equality, merge is the diagonal.
    pub fn discrete<I, S>(labels: I) -> Result<Self, IPosetError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let b = Self::builder(labels);
        let n = b.labels.len();
        (0..n).fold(b, |b, i| b.merge_idx(i, i, i)).build()
    }

    /// A chain in the listed order, with `I = ≤` and merge = max.
    pub fn chain<I, S>(labels: I) -> Result<Self, IPosetError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut b = Self::builder(labels);
        let n = b.labels.len();
        for i in 0..n {
            for j in i..n {
                b = b.le_idx(i, j).identical_idx(i, j).merge_idx(i, j, j);
            }
        }
        b.build()
    }

    /// Tables from arbitrary relation functions, without any validation.
    ///
    /// This is the only way to obtain an invalid `FiniteIPoset`, which is
    /// what [`verify_iposet`] is for.
    pub fn from_relations_unchecked(
        labels: Vec<String>,
        le: impl Fn(usize, usize) -> bool,
        identical: impl Fn(usize, usize) -> bool,
        merge: Option<&dyn Fn(usize, usize) -> Option<usize>>,
    ) -> Self {
        let n = labels.len();
        let mut lt = alloc::vec![false; n * n];
        let mut it = alloc::vec![false; n * n];
        for a in 0..n {
            for b in 0..n {
                lt[a * n + b] = le(a, b);
                it[a * n + b] = identical(a, b);
            }
        }
        let merge = merge.map(|m| {
            let mut mt = alloc::vec![None; n * n];
            for a in 0..n {
                for b in 0..n {
                    mt[a * n + b] = m(a, b).filter(|&c| c < n);
                }
            }
            mt
        });
        Self::assemble(labels, lt, it, merge)
    }

    fn assemble(labels: Vec<String>, le: Vec<bool>, id: Vec<bool>, merge: Option<Vec<Option<usize>>>) -> Self {
        let n = labels.len();
        let least = (0..n).find(|&o| (0..n).all(|s| le[o * n + s]));
        FiniteIPoset { t: Arc::new(Tables { labels, le, id, merge, least }) }
    }

    pub fn len(&self) -> usize {
        self.t.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.t.labels.is_empty()
    }

    pub fn points(&self) -> impl Iterator<Item = Point> + '_ {
        (0..self.len()).map(Point)
    }

    pub fn label(&self, p: Point) -> &str {
        &self.t.labels[p.0]
    }

    pub fn labels(&self) -> &[String] {
        &self.t.labels
    }

    pub fn point(&self, label: &str) -> Option<Point> {
        self.t.labels.iter().position(|l| l == label).map(Point)
    }

    /// Like [`FiniteIPoset::point`], panicking on an unknown label. Meant for
    /// fixtures and tests.
    pub fn at(&self, label: &str) -> Point {
        self.point(label).unwrap_or_else(|| panic!("no element labelled `{label}`"))
    }

    pub fn le_pairs(&self) -> impl Iterator<Item = (Point, Point)> + '_ {
        let n = self.len();
        (0..n * n).filter(move |&k| self.t.le[k]).map(move |k| (Point(k / n), Point(k % n)))
    }

    pub fn identical_pairs(&self) -> impl Iterator<Item = (Point, Point)> + '_ {
        let n = self.len();
        (0..n * n).filter(move |&k| self.t.id[k]).map(move |k| (Point(k / n), Point(k % n)))
    }

    pub fn merge_triples(&self) -> impl Iterator<Item = (Point, Point, Point)> + '_ {
        let n = self.len();
        self.t
            .merge
            .iter()
            .flat_map(move |m| (0..n * n).filter_map(move |k| m[k].map(|c| (Point(k / n), Point(k % n), Point(c)))))
    }

    /// The join computed on the tables.
    pub fn join(&self, a: Point, b: Point) -> Option<Point> {
        let n = self.len();
        let le = &self.t.le;
        let upper: Vec<usize> = (0..n).filter(|&x| le[a.0 * n + x] && le[b.0 * n + x]).collect();
        upper.iter().copied().find(|&m| upper.iter().all(|&x| le[m * n + x])).map(Point)
    }

    /// The same i-poset with merge set to the join wherever the join exists.
    pub fn with_join_merge(&self) -> FiniteIPoset {
        let n = self.len();
        let mut m = alloc::vec![None; n * n];
        for a in 0..n {
            for b in 0..n {
                m[a * n + b] = self.join(Point(a), Point(b)).map(|p| p.0);
            }
        }
        Self::assemble(self.t.labels.clone(), self.t.le.clone(), self.t.id.clone(), Some(m))
    }

    /// The same i-poset with a different identical-update relation, validated.
    pub fn with_identical(&self, identical: impl Fn(Point, Point) -> bool) -> Result<FiniteIPoset, IPosetError> {
        let n = self.len();
        let id = (0..n * n).map(|k| identical(Point(k / n), Point(k % n))).collect();
        let p = Self::assemble(self.t.labels.clone(), self.t.le.clone(), id, self.t.merge.clone());
        p.validated()
    }

    pub fn without_merge(&self) -> FiniteIPoset {
        Self::assemble(self.t.labels.clone(), self.t.le.clone(), self.t.id.clone(), None)
    }

    fn validated(self) -> Result<Self, IPosetError> {
        let report = verify_iposet(&self);
        if report.is_ok() {
            Ok(self)
        } else {
            Err(IPosetError::Invalid(report))
        }
    }
}

impl IPoset for FiniteIPoset {
    type Elem = Point;

    fn le(&self, a: &Point, b: &Point) -> bool {
        self.t.le[a.0 * self.len() + b.0]
    }

    fn identical(&self, a: &Point, b: &Point) -> bool {
        self.t.id[a.0 * self.len() + b.0]
    }

    fn least(&self) -> Option<Point> {
        self.t.least.map(Point)
    }

    fn merge(&self, a: &Point, b: &Point) -> Option<Point> {
        self.t.merge.as_ref().and_then(|m| m[a.0 * self.len() + b.0]).map(Point)
    }

    fn has_merge(&self) -> bool {
        self.t.merge.is_some()
    }

    fn contains(&self, a: &Point) -> bool {
        a.0 < self.len()
    }

    fn describe(&self, a: &Point) -> String {
        self.t.labels.get(a.0).cloned().unwrap_or_else(|| a.to_string())
    }
}

impl Enumerable for FiniteIPoset {
    fn elements(&self) -> Vec<Point> {
        self.points().collect()
    }
}

/// Accumulates elements and relation pairs for a [`FiniteIPoset`].
///
/// Reflexive pairs of `≤` and `I` are present from the start. Merge entries
/// are symmetric: `merge(a, b, c)` also defines `b ⊕ a = c`.
#[derive(Clone, Debug)]
pub struct FiniteIPosetBuilder {
    labels: Vec<String>,
    le: Vec<bool>,
    id: Vec<bool>,
    merge: Option<Vec<Option<usize>>>,
    error: Option<IPosetError>,
}

impl FiniteIPosetBuilder {
    fn new(labels: Vec<String>) -> Self {
        let n = labels.len();
        let mut le = alloc::vec![false; n * n];
        for i in 0..n {
            le[i * n + i] = true;
        }
        let error = labels
            .iter()
            .enumerate()
            .find(|(i, l)| labels[..*i].contains(l))
            .map(|(_, l)| IPosetError::DuplicateLabel(l.clone()));
        FiniteIPosetBuilder { id: le.clone(), le, labels, merge: None, error }
    }

    fn index(&mut self, label: &str) -> usize {
        match self.labels.iter().position(|l| l == label) {
            Some(i) => i,
            None => {
                self.error.get_or_insert(IPosetError::UnknownLabel(label.into()));
                usize::MAX
            }
        }
    }

    fn in_range(&mut self, i: usize) -> bool {
        if i < self.labels.len() {
            true
        } else {
            self.error.get_or_insert(IPosetError::UnknownLabel(i.to_string()));
            false
        }
    }

    pub fn le_idx(mut self, a: usize, b: usize) -> Self {
        if self.in_range(a) && self.in_range(b) {
            let n = self.labels.len();
            self.le[a * n + b] = true;
        }
        self
    }

    pub fn identical_idx(mut self, a: usize, b: usize) -> Self {
        if self.in_range(a) && self.in_range(b) {
            let n = self.labels.len();
            self.id[a * n + b] = true;
        }
        self
    }

    pub fn merge_idx(mut self, a: usize, b: usize, c: usize) -> Self {
        if self.in_range(a) && self.in_range(b) && self.in_range(c) {
            let n = self.labels.len();
            let m = self.merge.get_or_insert_with(|| alloc::vec![None; n * n]);
            m[a * n + b] = Some(c);
            m[b * n + a] = Some(c);
        }
        self
    }

    /// `a ≤ b`.
    pub fn le(mut self, a: &str, b: &str) -> Self {
        let (a, b) = (self.index(a), self.index(b));
        self.le_idx(a, b)
    }

    /// `a ∈ I_b`.
    pub fn identical(mut self, a: &str, b: &str) -> Self {
        let (a, b) = (self.index(a), self.index(b));
        self.identical_idx(a, b)
    }

    /// `a ≤ b` and `a ∈ I_b`.
    pub fn both(self, a: &str, b: &str) -> Self {
        self.le(a, b).identical(a, b)
    }

    /// `a ⊕ b = c` (and `b ⊕ a = c`).
    pub fn merge(mut self, a: &str, b: &str, c: &str) -> Self {
        let (a, b, c) = (self.index(a), self.index(b), self.index(c));
        self.merge_idx(a, b, c)
    }

    /// Attaches a merge table, empty unless entries are added.
    pub fn with_merge(mut self) -> Self {
        let n = self.labels.len();
        self.merge.get_or_insert_with(|| alloc::vec![None; n * n]);
        self
    }

    /// Closes `≤` under transitivity.
    pub fn close_order(mut self) -> Self {
        let n = self.labels.len();
        for k in 0..n {
            for i in 0..n {
                if self.le[i * n + k] {
                    for j in 0..n {
                        if self.le[k * n + j] {
                            self.le[i * n + j] = true;
                        }
                    }
                }
            }
        }
        self
    }

    /// Sets merge to the join wherever it exists (replacing any entries).
    pub fn join_merge(self) -> Self {
        let FiniteIPosetBuilder { labels, le, id, error, .. } = self;
        let p = FiniteIPoset::assemble(labels.clone(), le.clone(), id.clone(), None).with_join_merge();
        let merge = p.t.merge.clone();
        FiniteIPosetBuilder { labels, le, id, merge, error }
    }

    pub fn build(self) -> Result<FiniteIPoset, IPosetError> {
        if let Some(e) = self.error {
            return Err(e);
        }
        if self.labels.is_empty() {
            return Err(IPosetError::Empty);
        }
        FiniteIPoset::assemble(self.labels, self.le, self.id, self.merge).validated()
    }

    /// Builds without validating the axioms (labels must still be known).
    pub fn build_unchecked(self) -> Result<FiniteIPoset, IPosetError> {
        if let Some(e) = self.error {
            return Err(e);
        }
        Ok(FiniteIPoset::assemble(self.labels, self.le, self.id, self.merge))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iposet::{check_duplicable, join};
    use crate::Rule;

    #[test]
    fn discrete_two_points_is_valid() {
        let p = FiniteIPoset::discrete(["a", "b"]).unwrap();
        assert!(verify_iposet(&p).is_ok());
        assert_eq!(p.least(), None);
        assert!(check_duplicable(&p).unwrap().is_ok());
    }

    #[test]
    fn identity_outside_order_is_named() {
        let p = FiniteIPoset::builder(["a", "b"]).identical("a", "b").build_unchecked().unwrap();
        let r = verify_iposet(&p);
        assert_eq!(r.violations.len(), 1);
        assert_eq!(r.violations[0].rule, Rule::IdentityWithinOrder);
        assert_eq!(r.violations[0].witness, ["a", "b"]);
        assert!(matches!(
            FiniteIPoset::builder(["a", "b"]).identical("a", "b").build(),
            Err(IPosetError::Invalid(_))
        ));
    }

    #[test]
    fn least_must_be_identical_everywhere() {
        let p = FiniteIPoset::builder(["o", "x"]).le("o", "x").build_unchecked().unwrap();
        let r = verify_iposet(&p);
        assert!(r.has(Rule::LeastIdentical));
        assert!(FiniteIPoset::builder(["o", "x"]).both("o", "x").build().is_ok());
    }

    #[test]
    fn bad_labels_are_rejected() {
        assert_eq!(
            FiniteIPoset::builder(["a"]).le("a", "z").build().unwrap_err(),
            IPosetError::UnknownLabel("z".into())
        );
        assert_eq!(
            FiniteIPoset::builder(["a", "a"]).build().unwrap_err(),
            IPosetError::DuplicateLabel("a".into())
        );
        assert_eq!(FiniteIPoset::builder(Vec::<String>::new()).build().unwrap_err(), IPosetError::Empty);
    }

    #[test]
    fn chain_joins_are_maxima() {
        let p = FiniteIPoset::chain(["0", "1", "2"]).unwrap();
        assert_eq!(p.join(p.at("0"), p.at("2")), Some(p.at("2")));
        assert_eq!(join(&p, &p.at("1"), &p.at("1")), Some(p.at("1")));
        assert_eq!(p.least(), Some(p.at("0")));
        assert!(check_duplicable(&p).unwrap().is_ok());
    }

    #[test]
    fn diamond_without_top_has_no_join() {
        // a, b below both c and d; c, d incomparable.
        let p = FiniteIPoset::builder(["a", "b", "c", "d"])
            .both("a", "c")
            .both("a", "d")
            .both("b", "c")
            .both("b", "d")
            .build()
            .unwrap();
        assert_eq!(p.join(p.at("a"), p.at("b")), None);
        assert_eq!(p.join(p.at("a"), p.at("c")), Some(p.at("c")));
    }

    #[test]
    fn merge_table_must_be_sound() {
        let p = FiniteIPoset::builder(["a", "b", "c"]).both("a", "b").merge("a", "c", "b").build_unchecked().unwrap();
        assert!(verify_iposet(&p).has(Rule::MergeSound));
    }
}
