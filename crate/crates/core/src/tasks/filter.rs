//! Filter lenses and the synchronization pipeline
//! `init_tasks ⨟ dup ⨟ (filter¬Done × filterToday)`.

use super::dt::{init_tasks, Delta, DtDomain, DtState, TasksDomain};
use super::model::{Date, TaskId, TaskRecord, Tasks};
use super::split::{SplitDelta, SplitDomain, SplitState, ViewPredicate};
use crate::iposet::IPoset;
use crate::lens::{compose, dup_lens, product_lens, Compose, DupLens, FailureReason, Initiator, Lens, ProductLens, PutFailure};
use alloc::format;

/// `(t ∖ t_P) ◁ t'`: the filtered-out tasks with the new view upserted.
fn put_proper(pred: ViewPredicate, t: &Tasks, t2: &Tasks) -> Tasks {
    t.filter(|r| !pred.holds(r)).upsert(t2)
}

fn first_failing<'a>(pred: ViewPredicate, t: &'a Tasks) -> Option<(&'a TaskId, &'a TaskRecord)> {
    t.iter().find(|(_, r)| !pred.holds(r))
}

/// The filter `DT → DT` keeping the tasks that satisfy a predicate.
///
/// `get` restricts tables and the `A` of deltas. `put` upserts a proper view
/// into the filtered-out part of a proper source, and passes deltas through.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PlainFilter {
    pred: ViewPredicate,
    dom: DtDomain,
}

impl PlainFilter {
    pub fn new(pred: ViewPredicate) -> PlainFilter {
        PlainFilter { pred, dom: DtDomain }
    }

    pub fn predicate(&self) -> ViewPredicate {
        self.pred
    }
}

impl Lens for PlainFilter {
    type Source = DtDomain;
    type View = DtDomain;

    fn source(&self) -> &DtDomain {
        &self.dom
    }

    fn view(&self) -> &DtDomain {
        &self.dom
    }

    fn get(&self, s: &DtState) -> DtState {
        match s {
            DtState::Proper(t) => DtState::Proper(t.filter(|r| self.pred.holds(r))),
            DtState::Delta(d) => {
                let add = d.add().filter(|r| self.pred.holds(r));
                DtState::Delta(Delta::new(add, d.del().clone()).expect("a restriction of a valid delta is valid"))
            }
        }
    }

    fn put(&self, s: &DtState, v: &DtState) -> Result<DtState, PutFailure> {
        let guard = |what: &str| {
            Err(PutFailure::new(FailureReason::GuardFailed, format!("{what} is not {} in {}", self.pred, self.dom.describe(v))))
        };
        match (s, v) {
            (DtState::Proper(t), DtState::Proper(t2)) => match first_failing(self.pred, t2) {
                None => Ok(DtState::Proper(put_proper(self.pred, t, t2))),
                Some((k, _)) => guard(&format!("task {k}")),
            },
            (DtState::Delta(_), DtState::Proper(_)) => Err(PutFailure::new(
                FailureReason::GuardFailed,
                format!("a proper view {} cannot update a delta source", self.dom.describe(v)),
            )),
            (_, DtState::Delta(d)) => match first_failing(self.pred, d.add()) {
                None => Ok(v.clone()),
                Some((k, _)) => guard(&format!("added task {k}")),
            },
        }
    }
}

/// The filter `DT → DT_OG` or `DT → DT_DT` that splits additions into the
/// ones that stay visible and the ones that leave the view.
///
/// On proper states it behaves like [`PlainFilter`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ElaboratedFilter {
    pred: ViewPredicate,
    src: DtDomain,
    view: SplitDomain,
}

impl ElaboratedFilter {
    pub fn new(pred: ViewPredicate) -> ElaboratedFilter {
        ElaboratedFilter { pred, src: DtDomain, view: SplitDomain::for_predicate(pred) }
    }

    pub fn predicate(&self) -> ViewPredicate {
        self.pred
    }
}

impl Lens for ElaboratedFilter {
    type Source = DtDomain;
    type View = SplitDomain;

    fn source(&self) -> &DtDomain {
        &self.src
    }

    fn view(&self) -> &SplitDomain {
        &self.view
    }

    fn get(&self, s: &DtState) -> SplitState {
        match s {
            DtState::Proper(t) => SplitState::Proper(t.filter(|r| self.pred.holds(r))),
            DtState::Delta(d) => {
                let visible = d.add().filter(|r| self.pred.holds(r));
                let hidden = d.add().filter(|r| !self.pred.holds(r));
                SplitState::Delta(
                    SplitDelta::new(self.pred, visible, hidden, d.del().clone()).expect("a split of a valid delta is valid"),
                )
            }
        }
    }

    fn put(&self, s: &DtState, v: &SplitState) -> Result<DtState, PutFailure> {
        match (s, v) {
            (DtState::Proper(t), SplitState::Proper(t2)) => match first_failing(self.pred, t2) {
                None => Ok(DtState::Proper(put_proper(self.pred, t, t2))),
                Some((k, _)) => Err(PutFailure::new(FailureReason::GuardFailed, format!("task {k} is not {}", self.pred))),
            },
            (DtState::Delta(_), SplitState::Proper(_)) => Err(PutFailure::new(
                FailureReason::GuardFailed,
                format!("a proper view {} cannot update a delta source", self.view.describe(v)),
            )),
            (_, SplitState::Delta(d)) => {
                let add = d.visible().union(d.hidden()).expect("visible and hidden ids are disjoint");
                Delta::new(add, d.del().clone()).map(DtState::Delta).map_err(|e| {
                    PutFailure::new(FailureReason::OutOfDomain, format!("{e}"))
                })
            }
        }
    }
}

/// `filter¬Done × filterToday` for a filter kind.
pub type Filters<F> = ProductLens<F, F>;

/// `init_tasks ⨟ dup ⨟ (filter¬Done × filterToday)`.
pub type Pipeline<F> = Compose<Compose<Initiator<TasksDomain, DtDomain>, DupLens<DtDomain>>, Filters<F>>;

pub type PlainPipeline = Pipeline<PlainFilter>;
pub type ElaboratedPipeline = Pipeline<ElaboratedFilter>;

/// The pipeline with the plain filters, whose views live in `DT`.
pub fn plain_pipeline(today: Date) -> PlainPipeline {
    let filters = product_lens(PlainFilter::new(ViewPredicate::Ongoing), PlainFilter::new(ViewPredicate::DueOn(today)));
    compose(compose(init_tasks(), dup_lens(DtDomain)), filters)
}

/// The pipeline with the elaborated filters, whose views live in `DT_OG`
/// and `DT_DT`.
pub fn elaborated_pipeline(today: Date) -> ElaboratedPipeline {
    let filters = product_lens(
        ElaboratedFilter::new(ViewPredicate::Ongoing),
        ElaboratedFilter::new(ViewPredicate::DueOn(today)),
    );
    compose(compose(init_tasks(), dup_lens(DtDomain)), filters)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::collections::BTreeSet;

    fn d(m: u8, day: u8) -> Date {
        Date::new(m, day).unwrap()
    }

    fn one(k: &str, r: TaskRecord) -> Tasks {
        [(TaskId::from(k), r)].into_iter().collect()
    }

    #[test]
    fn plain_put_rejects_hidden_additions() {
        let f = PlainFilter::new(ViewPredicate::Ongoing);
        let done = one("1", TaskRecord::new(true, "x", d(4, 1)));
        let v = DtState::Delta(Delta::new(done.clone(), BTreeSet::new()).unwrap());
        let err = f.put(&DtState::omega(), &v).unwrap_err();
        assert_eq!(err.reason, FailureReason::GuardFailed);
        assert!(f.put(&DtState::Proper(Tasks::new()), &DtState::Proper(done)).is_err());
        assert_eq!(f.put(&DtState::Proper(Tasks::new()), &DtState::omega()), Ok(DtState::omega()));
    }

    #[test]
    fn plain_put_keeps_filtered_out_tasks() {
        let f = PlainFilter::new(ViewPredicate::Ongoing);
        let done = TaskRecord::new(true, "x", d(4, 1));
        let open = TaskRecord::new(false, "y", d(4, 1));
        let t = one("1", done.clone()).upsert(&one("2", open.clone()));
        let v = one("3", open.clone());
        let expected = one("1", done).upsert(&v);
        assert_eq!(f.put(&DtState::Proper(t), &DtState::Proper(v)), Ok(DtState::Proper(expected)));
    }

    #[test]
    fn elaborated_put_joins_the_split() {
        let f = ElaboratedFilter::new(ViewPredicate::DueOn(d(4, 1)));
        let later = one("1", TaskRecord::new(false, "x", d(4, 2)));
        let v = SplitState::Delta(SplitDelta::new(f.predicate(), Tasks::new(), later.clone(), BTreeSet::new()).unwrap());
        assert_eq!(f.put(&DtState::omega(), &v), Ok(DtState::Delta(Delta::new(later, BTreeSet::new()).unwrap())));
    }
}
