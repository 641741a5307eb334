//! File formats and drivers around [`eres_core`]: the domain and query
//! syntax, the clause-style translation dump, a backend-neutral query
//! interface and the bundled example corpus.

pub mod corpus;
mod error;
pub mod parser;
pub mod reason;
pub mod translation;

pub use error::Error;
pub use parser::{parse_domain, parse_query, print_domain, resolve_query, ParseError, SourceSpan};
pub use reason::{Backend, Options};
pub use translation::dump_translation;
