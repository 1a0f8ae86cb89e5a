//! Script-to-scheme dispatch for any-to-Latin transliteration.

use std::collections::{BTreeMap, HashMap};
use std::path::Path;
use std::sync::Arc;

use serde::Serialize;

use super::rules::{InvertError, ReadingsResolver, RuleError, RuleSet, SchemeId};
use crate::pinyin::HanReadings;
use crate::ucd::{normalize, CharacterDatabase, NormalizationForm, ScriptTag};

pub const REGISTRY_FILE: &str = "registry.tsv";

#[derive(Debug, thiserror::Error)]
pub enum RegistryError {
    #[error("{file}:{line}: {message}")]
    Parse { file: String, line: usize, message: String },
    #[error("{file}: {source}")]
    Rules {
        file: String,
        #[source]
        source: RuleError,
    },
    #[error("missing scheme file {0}")]
    MissingFile(String),
    #[error("reading {file}: {source}")]
    Io {
        file: String,
        #[source]
        source: std::io::Error,
    },
}

/// Target of a [`SchemeRegistry::uconv`] call.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UconvTarget {
    /// Per-run dispatch on the script of each run.
    Auto,
    Scheme(SchemeId),
}

/// Per-call record of what AUTO dispatch could not handle.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct UconvDiagnostics {
    pub runs: usize,
    /// Runs of a script with no registered scheme, passed through unchanged.
    pub unregistered_runs: usize,
    /// Characters in unregistered runs, by script name.
    pub unregistered_chars: BTreeMap<String, usize>,
}

/// Compiled schemes plus the script dispatch table.
#[derive(Debug, Clone)]
pub struct SchemeRegistry {
    db: Arc<CharacterDatabase>,
    schemes: HashMap<SchemeId, Arc<RuleSet>>,
    dispatch: HashMap<ScriptTag, SchemeId>,
}

impl SchemeRegistry {
    /// The registry compiled from the bundled scheme files, built once.
    pub fn bundled() -> &'static SchemeRegistry {
        crate::data::bundled_schemes()
    }

    /// Compiles the bundled files into a fresh registry.
    pub fn bundled_uncached() -> Result<Self, RegistryError> {
        Self::bundled_with_database(Arc::clone(crate::data::bundled_database_arc()))
    }

    /// The bundled scheme files over another character database.
    pub fn bundled_with_database(db: Arc<CharacterDatabase>) -> Result<Self, RegistryError> {
        Self::from_sources(
            db,
            crate::data::SCHEME_REGISTRY,
            &mut |name: &str| crate::data::bundled_file(name).map(str::to_string),
            &mut super::rules::BundledReadings,
        )
    }

    /// Reads `registry.tsv`, the rule files it names, and any readings tables
    /// from `dir`.
    pub fn from_dir(db: Arc<CharacterDatabase>, dir: impl AsRef<Path>) -> Result<Self, RegistryError> {
        let dir = dir.as_ref();
        let read = |name: &str| -> Result<String, RegistryError> {
            std::fs::read_to_string(dir.join(name)).map_err(|source| match source.kind() {
                std::io::ErrorKind::NotFound => RegistryError::MissingFile(name.to_string()),
                _ => RegistryError::Io {
                    file: name.to_string(),
                    source,
                },
            })
        };
        let registry = read(REGISTRY_FILE)?;
        let mut readings_cache: HashMap<String, Arc<HanReadings>> = HashMap::new();
        let mut resolver = |name: &str| -> Result<Arc<HanReadings>, String> {
            if let Some(t) = readings_cache.get(name) {
                return Ok(Arc::clone(t));
            }
            let src = read(name).map_err(|e| e.to_string())?;
            let table = Arc::new(HanReadings::parse(name, &src).map_err(|e| e.to_string())?);
            readings_cache.insert(name.to_string(), Arc::clone(&table));
            Ok(table)
        };
        Self::from_sources(db, &registry, &mut |name: &str| read(name).ok(), &mut resolver)
    }

    /// Builds from registry text; `open` returns rule-file contents by name.
    pub fn from_sources(
        db: Arc<CharacterDatabase>,
        registry: &str,
        open: &mut dyn FnMut(&str) -> Option<String>,
        readings: &mut dyn ReadingsResolver,
    ) -> Result<Self, RegistryError> {
        let mut schemes: HashMap<SchemeId, Arc<RuleSet>> = HashMap::new();
        let mut by_file: HashMap<String, SchemeId> = HashMap::new();
        let mut dispatch = HashMap::new();
        for (i, raw) in registry.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let parse_err = |message: String| RegistryError::Parse {
                file: REGISTRY_FILE.to_string(),
                line: i + 1,
                message,
            };
            let (script, file) = line
                .split_once('\t')
                .map(|(a, b)| (a.trim(), b.trim()))
                .ok_or_else(|| parse_err("expected `<script>\\t<rule file>`".into()))?;
            let id = match by_file.get(file) {
                Some(id) => *id,
                None => {
                    let src = open(file).ok_or_else(|| RegistryError::MissingFile(file.to_string()))?;
                    let rs = RuleSet::compile_with(&src, readings).map_err(|source| RegistryError::Rules {
                        file: file.to_string(),
                        source,
                    })?;
                    let id = rs
                        .scheme()
                        .ok_or_else(|| parse_err(format!("{file} declares no %scheme")))?;
                    schemes.insert(id, Arc::new(rs));
                    by_file.insert(file.to_string(), id);
                    id
                }
            };
            dispatch.insert(ScriptTag::from_name(script), id);
        }
        Ok(Self { db, schemes, dispatch })
    }

    pub fn get(&self, id: SchemeId) -> Option<&RuleSet> {
        self.schemes.get(&id).map(|rs| &**rs)
    }

    pub fn scheme_for(&self, script: &ScriptTag) -> Option<SchemeId> {
        self.dispatch.get(script).copied()
    }

    pub fn uconv(&self, text: &str, target: UconvTarget) -> String {
        self.uconv_with_diagnostics(text, target).0
    }

    /// Input is NFKC-normalized first; output is NFC.
    pub fn uconv_with_diagnostics(&self, text: &str, target: UconvTarget) -> (String, UconvDiagnostics) {
        let text = normalize(text, NormalizationForm::Nfkc);
        let mut diagnostics = UconvDiagnostics::default();
        let mut out = String::with_capacity(text.len() * 2);
        match target {
            UconvTarget::Scheme(id) => match self.get(id) {
                Some(rs) => rs.apply_into(&text, &mut out),
                None => out.push_str(&text),
            },
            UconvTarget::Auto => {
                for run in self.db.script_runs(&text) {
                    diagnostics.runs += 1;
                    let piece = run.text(&text);
                    match self.scheme_for(&run.script).and_then(|id| self.get(id)) {
                        Some(rs) => rs.apply_into(piece, &mut out),
                        None => {
                            if run.script != ScriptTag::Latin && !run.script.is_neutral() {
                                diagnostics.unregistered_runs += 1;
                                *diagnostics
                                    .unregistered_chars
                                    .entry(run.script.name().to_string())
                                    .or_default() += run.chars.len();
                            }
                            out.push_str(piece);
                        }
                    }
                }
            }
        }
        (normalize(&out, NormalizationForm::Nfc), diagnostics)
    }

    /// Inverts ISO 9 output back to Cyrillic.
    pub fn invert(&self, id: SchemeId, text: &str) -> Result<String, InvertError> {
        match self.get(id) {
            Some(rs) => rs.invert(text),
            None => Err(InvertError::NotInvertible(id.to_string())),
        }
    }
}

/// Any-to-Latin with the bundled registry.
pub fn uconv(text: &str, target: UconvTarget) -> String {
    SchemeRegistry::bundled().uconv(text, target)
}

/// ISO 9 inverse with the bundled registry.
pub fn invert_iso9(text: &str) -> Result<String, InvertError> {
    SchemeRegistry::bundled().invert(SchemeId::Iso9, text)
}
