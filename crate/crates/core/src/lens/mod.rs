//! Partial-state lenses and their combinators.
//!
//! A lens between i-posets `P` and `Q` is a total `get: |P| → |Q|` and a
//! partial `put: |P| × |Q| ⇀ |P|`. Nothing here enforces the round-tripping
//! laws; constructors promise them for lawful inputs and [`crate::laws`]
//! checks them.

mod combinators;
mod primitives;

pub use combinators::{compose, product_lens, Compose, ProductLens};
pub use primitives::{
    constant_lens, dup_lens, dup_lens_checked, DupError, identity_lens, untag_pred, untag_pred_checked, untag_s, ConstLens,
    DupLens, FnLens, IdLens, Initiator, NoLeastElement, Untag, UntagS,
};

use crate::iposet::IPoset;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

/// Element type of a lens's source domain.
pub type SourceOf<L> = <<L as Lens>::Source as IPoset>::Elem;
/// Element type of a lens's view domain.
pub type ViewOf<L> = <<L as Lens>::View as IPoset>::Elem;

pub trait Lens {
    type Source: IPoset;
    type View: IPoset;

    fn source(&self) -> &Self::Source;
    fn view(&self) -> &Self::View;

    /// Total forward transformation.
    fn get(&self, s: &SourceOf<Self>) -> ViewOf<Self>;

    /// Partial backward transformation; undefinedness is a normal outcome.
    fn put(&self, s: &SourceOf<Self>, v: &ViewOf<Self>) -> Result<SourceOf<Self>, PutFailure>;
}

impl<L: Lens + ?Sized> Lens for &L {
    type Source = L::Source;
    type View = L::View;
    fn source(&self) -> &Self::Source {
        (**self).source()
    }
    fn view(&self) -> &Self::View {
        (**self).view()
    }
    fn get(&self, s: &SourceOf<Self>) -> ViewOf<Self> {
        (**self).get(s)
    }
    fn put(&self, s: &SourceOf<Self>, v: &ViewOf<Self>) -> Result<SourceOf<Self>, PutFailure> {
        (**self).put(s, v)
    }
}

impl<L: Lens + ?Sized> Lens for Arc<L> {
    type Source = L::Source;
    type View = L::View;
    fn source(&self) -> &Self::Source {
        (**self).source()
    }
    fn view(&self) -> &Self::View {
        (**self).view()
    }
    fn get(&self, s: &SourceOf<Self>) -> ViewOf<Self> {
        (**self).get(s)
    }
    fn put(&self, s: &SourceOf<Self>, v: &ViewOf<Self>) -> Result<SourceOf<Self>, PutFailure> {
        (**self).put(s, v)
    }
}

/// Why a `put` is undefined.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FailureReason {
    /// Two view updates have no merge.
    MergeConflict,
    /// The update cannot be applied to the given source.
    OutOfDomain,
    /// A lens-specific side condition on the inputs does not hold.
    GuardFailed,
}

impl fmt::Display for FailureReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FailureReason::MergeConflict => "merge conflict",
            FailureReason::OutOfDomain => "out of domain",
            FailureReason::GuardFailed => "guard failed",
        })
    }
}

/// Where inside a combined lens a failure arose.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Stage {
    /// The first (source-side) lens of a composition.
    First,
    /// The second (view-side) lens of a composition.
    Second,
    /// The left component of a product.
    Left,
    /// The right component of a product.
    Right,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Stage::First => "first",
            Stage::Second => "second",
            Stage::Left => "left",
            Stage::Right => "right",
        })
    }
}

/// An undefined `put`, with the offending values and the path of stages
/// (outermost first) leading to the lens that refused.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub struct PutFailure {
    pub reason: FailureReason,
    pub witness: String,
    pub stage: Vec<Stage>,
}

impl PutFailure {
    pub fn new(reason: FailureReason, witness: impl Into<String>) -> Self {
        PutFailure { reason, witness: witness.into(), stage: Vec::new() }
    }

    /// Records that this failure happened inside `stage`.
    pub fn within(mut self, stage: Stage) -> Self {
        self.stage.insert(0, stage);
        self
    }
}

impl fmt::Display for PutFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.reason)?;
        if !self.stage.is_empty() {
            f.write_str(" in ")?;
            for (i, s) in self.stage.iter().enumerate() {
                if i > 0 {
                    f.write_str("/")?;
                }
                write!(f, "{s}")?;
            }
        }
        write!(f, ": {}", self.witness)
    }
}
