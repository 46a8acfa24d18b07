//! Session service behind the mutation explorer: one current diagram per
//! session, an undo stack, and validation and mutation queries.

pub mod error;
pub mod http;
pub mod store;

pub use error::{ErrorCode, ServiceError};
pub use http::router;
pub use store::{CreateRequest, PresetDescriptor, SessionState, SessionStore};
