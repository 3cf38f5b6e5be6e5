//! Direct implication deciders.

use core::fmt;

use crate::atom::{Atom, ConstraintSet, Modality};
use crate::error::{Error, Result};
use crate::implication::rules::RuleSystem;
use crate::implication::saturate::Saturation;
use crate::relation::AttrSet;

/// Whether a negative answer also means non-implication.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Completeness {
    /// The answer is exact.
    Complete,
    /// `holds` means implied; its negation only means "not derivable".
    SoundOnly,
}

impl Completeness {
    pub fn name(self) -> &'static str {
        match self {
            Completeness::Complete => "complete",
            Completeness::SoundOnly => "sound-only",
        }
    }
}

impl fmt::Display for Completeness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ImplicationAnswer {
    pub holds: bool,
    pub completeness: Completeness,
}

impl ImplicationAnswer {
    fn complete(holds: bool) -> Self {
        ImplicationAnswer {
            holds,
            completeness: Completeness::Complete,
        }
    }

    fn sound_only(holds: bool) -> Self {
        ImplicationAnswer {
            holds,
            completeness: Completeness::SoundOnly,
        }
    }
}

fn require(atom: &Atom, m: Modality) -> Result<()> {
    if atom.modality != m {
        return Err(Error::ModalityMismatch {
            expected: m,
            found: atom.modality,
        });
    }
    Ok(())
}

fn require_all(sigma: &ConstraintSet, goal: &Atom, m: Modality) -> Result<()> {
    sigma.iter().try_for_each(|a| require(a, m))?;
    require(goal, m)
}

/// Attributes some atom of `sigma` has on both sides.
pub fn constants_of(sigma: &ConstraintSet) -> AttrSet {
    sigma.iter().fold(AttrSet::EMPTY, |k, a| k | (a.lhs & a.rhs))
}

/// Implication among plain atoms over complete relations.
pub fn implies_ia(sigma: &ConstraintSet, goal: &Atom) -> Result<bool> {
    implies_ia_with(sigma, goal, Saturation::default())
}

pub fn implies_ia_with(sigma: &ConstraintSet, goal: &Atom, sat: Saturation) -> Result<bool> {
    require_all(sigma, goal, Modality::Plain)?;
    Ok(sat.derives(sigma, goal, RuleSystem::i())?.is_some())
}

/// Implication among certain atoms, which coincides with implication of
/// the underlying plain atoms.
pub fn implies_cia(sigma: &ConstraintSet, goal: &Atom) -> Result<bool> {
    implies_cia_with(sigma, goal, Saturation::default())
}

pub fn implies_cia_with(sigma: &ConstraintSet, goal: &Atom, sat: Saturation) -> Result<bool> {
    require_all(sigma, goal, Modality::Certain)?;
    implies_ia_with(&sigma.ind(), &goal.ind(), sat)
}

/// Implication of a possible atom with a singleton side or near-equal side
/// sizes by possible atoms. Runs in polynomial time.
pub fn implies_pia_star(sigma: &ConstraintSet, goal: &Atom) -> Result<bool> {
    require_all(sigma, goal, Modality::Possible)?;
    if !goal.is_pia_star()? {
        return Err(Error::NotPiaStar);
    }
    let k = constants_of(sigma);
    let (x, y) = (goal.lhs - k, goal.rhs - k);
    if x.is_empty() || y.is_empty() {
        return Ok(true);
    }
    Ok(sigma
        .iter()
        .any(|a| (x.is_subset(a.lhs) && y.is_subset(a.rhs)) || (x.is_subset(a.rhs) && y.is_subset(a.lhs))))
}

/// Implication among disjoint certain and possible atoms. Certain goals are
/// decided exactly from the certain atoms alone; possible goals are
/// answered by derivability.
pub fn implies_mixed_disjoint(sigma: &ConstraintSet, goal: &Atom) -> Result<ImplicationAnswer> {
    implies_mixed_disjoint_with(sigma, goal, Saturation::default())
}

pub fn implies_mixed_disjoint_with(sigma: &ConstraintSet, goal: &Atom, sat: Saturation) -> Result<ImplicationAnswer> {
    for a in sigma.iter().chain([goal]) {
        if !a.is_disjoint() {
            return Err(Error::NotDisjoint);
        }
        if a.modality == Modality::Plain {
            return Err(Error::UnsupportedFragment(
                "plain atoms cannot be mixed with possible or certain atoms",
            ));
        }
    }
    match goal.modality {
        Modality::Certain => {
            let certain = sigma.filter(Modality::Certain);
            let holds = implies_ia_with(&certain.ind(), &goal.ind(), sat)?;
            Ok(ImplicationAnswer::complete(holds))
        }
        _ => {
            let d = sat.derives(sigma, goal, RuleSystem::mixed_disjoint())?;
            Ok(ImplicationAnswer::sound_only(d.is_some()))
        }
    }
}

/// Routes a query to the strongest applicable decider.
///
/// * all plain: exact, by the plain rules
/// * all certain: exact, through the plain atoms
/// * all possible with a goal in the exact fragment: the direct procedure
/// * disjoint certain and possible atoms: exact for certain goals
/// * everything else: derivability in the matching rule system, sound only
pub fn implies(sigma: &ConstraintSet, goal: &Atom, sat: Saturation) -> Result<ImplicationAnswer> {
    let has = |m: Modality| sigma.iter().chain([goal]).any(|a| a.modality == m);
    let (plain, certain, possible) = (has(Modality::Plain), has(Modality::Certain), has(Modality::Possible));
    if plain {
        if certain || possible {
            return Err(Error::UnsupportedFragment(
                "plain atoms cannot be mixed with possible or certain atoms",
            ));
        }
        return Ok(ImplicationAnswer::complete(implies_ia_with(sigma, goal, sat)?));
    }
    if !possible {
        return Ok(ImplicationAnswer::complete(implies_cia_with(sigma, goal, sat)?));
    }
    if !certain && goal.is_pia_star()? {
        return Ok(ImplicationAnswer::complete(implies_pia_star(sigma, goal)?));
    }
    if !certain {
        let d = sat.derives(sigma, goal, RuleSystem::i_p())?;
        return Ok(ImplicationAnswer::sound_only(d.is_some()));
    }
    if sigma.iter().chain([goal]).all(|a| a.is_disjoint()) {
        return implies_mixed_disjoint_with(sigma, goal, sat);
    }
    let d = sat.derives(sigma, goal, RuleSystem::mixed())?;
    Ok(ImplicationAnswer::sound_only(d.is_some()))
}
