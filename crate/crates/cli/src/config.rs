use beliefkit_core::semantics::MAX_VOCAB_BITS;
use beliefkit_core::DEFAULT_VOCAB_CAP;

use crate::error::{CliError, CliResult};

/// Environment variable overriding the enumeration cap.
pub const VOCAB_CAP_VAR: &str = "BELIEFKIT_VOCAB_CAP";

/// Parses a cap value; it must lie in `1..=63`.
pub fn parse_cap(text: &str) -> CliResult<usize> {
    match text.trim().parse::<usize>() {
        Ok(cap) if (1..=MAX_VOCAB_BITS).contains(&cap) => Ok(cap),
        _ => Err(CliError::Usage(format!(
            "{VOCAB_CAP_VAR} must be an integer between 1 and {MAX_VOCAB_BITS}, got `{text}`"
        ))),
    }
}

/// The enumeration cap in effect: the environment override or the default.
pub fn vocab_cap() -> CliResult<usize> {
    match std::env::var(VOCAB_CAP_VAR) {
        Ok(text) => parse_cap(&text),
        Err(_) => Ok(DEFAULT_VOCAB_CAP),
    }
}
