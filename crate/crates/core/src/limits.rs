//! Size caps for closure and enumeration, overridable from the environment.

use std::env;

/// Environment variable overriding [`Limits::closure_cap`].
pub const CLOSURE_CAP_VAR: &str = "POLYCRYSTAL_CLOSURE_CAP";
/// Environment variable overriding [`Limits::enumeration_cap`].
pub const ENUMERATION_CAP_VAR: &str = "POLYCRYSTAL_ENUM_CAP";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of forms in one closure.
    pub closure_cap: usize,
    /// Maximum number of points produced by one enumeration or generation.
    pub enumeration_cap: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            closure_cap: 100_000,
            enumeration_cap: 10_000_000,
        }
    }
}

impl Limits {
    /// Defaults, with any parseable override from the environment applied.
    pub fn from_env() -> Self {
        let read = |var: &str, default: usize| {
            env::var(var)
                .ok()
                .and_then(|v| v.trim().parse().ok())
                .unwrap_or(default)
        };
        let d = Limits::default();
        Limits {
            closure_cap: read(CLOSURE_CAP_VAR, d.closure_cap),
            enumeration_cap: read(ENUMERATION_CAP_VAR, d.enumeration_cap),
        }
    }
}
