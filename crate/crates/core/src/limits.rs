use std::sync::OnceLock;

pub const DEFAULT_UNIVERSE_CAP: usize = 5000;
pub const DEFAULT_EXACT_CAP: usize = 256;
pub const DEFAULT_TABLE_VALIDATION_CAP: usize = 512;
pub const DEFAULT_ENUMERATION_CAP: usize = 10_000;

pub const UNIVERSE_CAP_ENV: &str = "MSNRING_UNIVERSE_CAP";
pub const EXACT_CAP_ENV: &str = "MSNRING_EXACT_CAP";

/// Size limits shared by ring construction, exact spectra and enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest ring order any constructor will build.
    pub universe_cap: usize,
    /// Largest matrix dimension handled by the exact characteristic-polynomial path.
    pub exact_cap: usize,
    /// Largest table ring whose axioms are checked exhaustively.
    pub table_validation_cap: usize,
    /// Largest admissible-set enumeration for multi-parameter closed forms.
    pub enumeration_cap: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            universe_cap: DEFAULT_UNIVERSE_CAP,
            exact_cap: DEFAULT_EXACT_CAP,
            table_validation_cap: DEFAULT_TABLE_VALIDATION_CAP,
            enumeration_cap: DEFAULT_ENUMERATION_CAP,
        }
    }
}

impl Limits {
    /// Defaults overridden by `MSNRING_UNIVERSE_CAP` and `MSNRING_EXACT_CAP`.
    pub fn from_env() -> Self {
        let mut limits = Self::default();
        if let Some(cap) = read_env(UNIVERSE_CAP_ENV) {
            limits.universe_cap = cap;
        }
        if let Some(cap) = read_env(EXACT_CAP_ENV) {
            limits.exact_cap = cap;
        }
        limits
    }

    /// Process-wide limits, read from the environment once.
    pub fn global() -> &'static Limits {
        static GLOBAL: OnceLock<Limits> = OnceLock::new();
        GLOBAL.get_or_init(Limits::from_env)
    }
}

fn read_env(key: &str) -> Option<usize> {
    std::env::var(key).ok()?.trim().parse().ok()
}
