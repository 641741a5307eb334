use std::io;
use std::path::PathBuf;

use crate::parser::ParseError;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{}:{source}", path.display())]
    Parse {
        path: PathBuf,
        #[source]
        source: ParseError,
    },

    #[error("query {source}")]
    Query {
        #[source]
        source: ParseError,
    },

    #[error("cannot read {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },

    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Reasoning(#[from] eres_core::Error),
}

impl Error {
    /// 3 for exhausted resource caps, 2 for everything else.
    pub fn exit_code(&self) -> u8 {
        use eres_core::Error as E;
        match self {
            Error::Reasoning(
                E::GroundingCap { .. } | E::RamificationCycle { .. } | E::FluentCap { .. } | E::Resource { .. },
            ) => 3,
            _ => 2,
        }
    }
}
