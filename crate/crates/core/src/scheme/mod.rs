//! Context-sensitive rewrite rules and the five shipped transliteration
//! schemes.

mod registry;
mod rules;

pub use registry::{invert_iso9, uconv, RegistryError, SchemeRegistry, UconvDiagnostics, UconvTarget, REGISTRY_FILE};
pub use rules::{
    apply_ruleset, compile_ruleset, BundledReadings, CharClass, InvertError, ReadingsResolver, RewriteRule, RuleError,
    RuleSet, SchemeId,
};
