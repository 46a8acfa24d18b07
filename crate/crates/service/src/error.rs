//! Structured errors with stable machine-readable codes.

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ErrorCode {
    UnknownSession,
    StaleOption,
    InvalidOption,
    InvalidUpload,
    NotVerified,
    WindowTooSmall,
    NothingToUndo,
    BadRequest,
}

impl ErrorCode {
    pub fn as_str(self) -> &'static str {
        match self {
            ErrorCode::UnknownSession => "unknown_session",
            ErrorCode::StaleOption => "stale_option",
            ErrorCode::InvalidOption => "invalid_option",
            ErrorCode::InvalidUpload => "invalid_upload",
            ErrorCode::NotVerified => "not_verified",
            ErrorCode::WindowTooSmall => "window_too_small",
            ErrorCode::NothingToUndo => "nothing_to_undo",
            ErrorCode::BadRequest => "bad_request",
        }
    }

    /// HTTP status used when the error crosses the wire.
    pub fn status(self) -> u16 {
        match self {
            ErrorCode::UnknownSession => 404,
            ErrorCode::StaleOption | ErrorCode::NothingToUndo => 409,
            ErrorCode::InvalidOption | ErrorCode::InvalidUpload | ErrorCode::NotVerified | ErrorCode::WindowTooSmall => 422,
            ErrorCode::BadRequest => 400,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
#[error("{}: {message}", code.as_str())]
pub struct ServiceError {
    pub code: ErrorCode,
    pub message: String,
}

impl ServiceError {
    pub fn new(code: ErrorCode, message: impl Into<String>) -> Self {
        ServiceError { code, message: message.into() }
    }

    /// `{"error":{"code":…,"message":…}}`
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({ "error": self })
    }
}
