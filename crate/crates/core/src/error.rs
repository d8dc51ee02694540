use thiserror::Error;

use crate::logic::Axiom;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("invalid axiom <>^{m} p -> <>^{n} p: require n > m > 1")]
    InvalidAxiom { m: usize, n: usize },

    #[error("invalid axiom list {0:?}: expected comma-separated \"m>n\" pairs")]
    AxiomSyntax(String),

    #[error("unknown world {0:?}")]
    UnknownWorld(String),

    #[error("duplicate world {0:?}")]
    DuplicateWorld(String),

    #[error("world {0:?} is not reachable from the root")]
    NotRooted(String),

    #[error("model format error: {0}")]
    Format(String),

    #[error("{0:?} is not a defect of the current state")]
    NotADefect(String),

    #[error("base frame violates {axiom}: {x:?} reaches {y:?} in m but not n steps")]
    BaseNotPhiFrame { axiom: Axiom, x: String, y: String },

    #[error("no back-clause witness from {from:?} into image {image:?}; map is not a p-morphism")]
    MissingBackWitness { from: String, image: String },

    #[error("map failed p-morphism verification: {0}")]
    NotAPMorphism(String),

    #[error("postcondition failed after repair: {0}")]
    Postcondition(String),

    #[error("filtration precondition failed: {0}")]
    Precondition(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
