use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// The axiom or condition a [`Violation`] breaks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rule {
    OrderReflexive,
    OrderAntisymmetric,
    OrderTransitive,
    IdentityWithinOrder,
    IdentityReflexive,
    LeastBelowAll,
    LeastIdentical,
    MergeSound,
    MergeTotalOnIdentities,
    MergeClosedOnIdentities,
    UpdateMergeSound,
    /// `⊕_U` respects `Ran`.
    G1,
    /// `⊕_U` is total on every down-set of `U`.
    G2,
    /// `⊕_U` is total and closed on the identical updates of each state.
    G3,
    FineEnough,
    MergeOnComparables,
    MergeAssociative,
    ErasedRanRespected,
    ErasureAgreement,
}

impl Rule {
    pub fn name(self) -> &'static str {
        match self {
            Rule::OrderReflexive => "order-reflexive",
            Rule::OrderAntisymmetric => "order-antisymmetric",
            Rule::OrderTransitive => "order-transitive",
            Rule::IdentityWithinOrder => "identity-within-order",
            Rule::IdentityReflexive => "identity-reflexive",
            Rule::LeastBelowAll => "least-below-all",
            Rule::LeastIdentical => "least-identical",
            Rule::MergeSound => "merge-sound",
            Rule::MergeTotalOnIdentities => "merge-total-on-identities",
            Rule::MergeClosedOnIdentities => "merge-closed-on-identities",
            Rule::UpdateMergeSound => "update-merge-sound",
            Rule::G1 => "G1",
            Rule::G2 => "G2",
            Rule::G3 => "G3",
            Rule::FineEnough => "fine-enough",
            Rule::MergeOnComparables => "merge-on-comparables",
            Rule::MergeAssociative => "merge-associative",
            Rule::ErasedRanRespected => "erased-ran-respected",
            Rule::ErasureAgreement => "erasure-agreement",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One broken rule together with the rendered elements that witness it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub rule: Rule,
    pub witness: Vec<String>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: ", self.rule)?;
        for (i, w) in self.witness.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str(w)?;
        }
        Ok(())
    }
}

/// Result of a structural check. An empty report means every rule held.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn push(&mut self, rule: Rule, witness: Vec<String>) {
        self.violations.push(Violation { rule, witness });
    }

    pub fn has(&self, rule: Rule) -> bool {
        self.violations.iter().any(|v| v.rule == rule)
    }

    pub fn of(&self, rule: Rule) -> impl Iterator<Item = &Violation> {
        self.violations.iter().filter(move |v| v.rule == rule)
    }

    pub fn extend(&mut self, other: ValidationReport) {
        self.violations.extend(other.violations);
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return f.write_str("ok");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                f.write_str("\n")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}
