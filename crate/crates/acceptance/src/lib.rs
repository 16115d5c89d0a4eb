//! Empty: the acceptance run lives in `tests/acceptance.rs`.
