//! One interface over both romanizers.

use std::borrow::Cow;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::scheme::{RegistryError, SchemeId, SchemeRegistry, UconvTarget};
use crate::ucd::{CharacterDatabase, UcdError};
use crate::uroman::{TableError, Uroman};

pub trait Romanizer: Send + Sync {
    fn romanize(&self, text: &str) -> String;
}

impl<F: Fn(&str) -> String + Send + Sync> Romanizer for F {
    fn romanize(&self, text: &str) -> String {
        self(text)
    }
}

/// Which romanizer to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scheme {
    Uroman,
    UconvAuto,
    Specific(SchemeId),
}

impl Scheme {
    pub const NAMES: [&'static str; 7] = ["uroman", "uconv-auto", "iso9", "iso15919", "pinyin", "hepburn", "adegn"];
}

impl FromStr for Scheme {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "uroman" => Ok(Self::Uroman),
            "uconv-auto" | "uconv" | "auto" => Ok(Self::UconvAuto),
            other => other
                .parse::<SchemeId>()
                .map(Self::Specific)
                .map_err(|_| format!("unknown scheme {s:?} (expected one of {})", Self::NAMES.join(", "))),
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Uroman => f.write_str("uroman"),
            Self::UconvAuto => f.write_str("uconv-auto"),
            Self::Specific(id) => f.write_str(&id.as_str().to_ascii_lowercase()),
        }
    }
}

/// A scheme bound to concrete engines.
#[derive(Debug, Clone, Copy)]
pub struct BoundScheme<'a> {
    scheme: Scheme,
    uroman: &'a Uroman,
    registry: &'a SchemeRegistry,
}

impl<'a> BoundScheme<'a> {
    pub fn new(scheme: Scheme, uroman: &'a Uroman, registry: &'a SchemeRegistry) -> Self {
        Self {
            scheme,
            uroman,
            registry,
        }
    }

    pub fn bundled(scheme: Scheme) -> BoundScheme<'static> {
        BoundScheme::new(scheme, Uroman::bundled(), SchemeRegistry::bundled())
    }

    pub fn scheme(&self) -> Scheme {
        self.scheme
    }

    pub fn uroman(&self) -> &'a Uroman {
        self.uroman
    }
}

impl Romanizer for BoundScheme<'_> {
    fn romanize(&self, text: &str) -> String {
        match self.scheme {
            Scheme::Uroman => self.uroman.romanize(text),
            Scheme::UconvAuto => self.registry.uconv(text, UconvTarget::Auto),
            Scheme::Specific(id) => self.registry.uconv(text, UconvTarget::Scheme(id)),
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum EngineError {
    #[error(transparent)]
    Ucd(#[from] UcdError),
    #[error(transparent)]
    Table(#[from] TableError),
    #[error(transparent)]
    Registry(#[from] RegistryError),
}

/// Both romanizers over one character database.
#[allow(clippy::large_enum_variant)]
pub enum Engines {
    Bundled,
    Custom { uroman: Uroman, registry: SchemeRegistry },
}

impl Engines {
    /// Engines over the database named by the UCD directory variable, or the
    /// bundled engines when it is unset.
    pub fn from_env() -> Result<Self, EngineError> {
        match CharacterDatabase::from_env()? {
            Cow::Borrowed(_) => Ok(Self::Bundled),
            Cow::Owned(db) => Self::with_database(Arc::new(db)),
        }
    }

    pub fn with_database(db: Arc<CharacterDatabase>) -> Result<Self, EngineError> {
        Ok(Self::Custom {
            uroman: Uroman::with_bundled_tables(Arc::clone(&db))?,
            registry: SchemeRegistry::bundled_with_database(db)?,
        })
    }

    pub fn uroman(&self) -> &Uroman {
        match self {
            Self::Bundled => Uroman::bundled(),
            Self::Custom { uroman, .. } => uroman,
        }
    }

    pub fn registry(&self) -> &SchemeRegistry {
        match self {
            Self::Bundled => SchemeRegistry::bundled(),
            Self::Custom { registry, .. } => registry,
        }
    }

    pub fn bind(&self, scheme: Scheme) -> BoundScheme<'_> {
        BoundScheme::new(scheme, self.uroman(), self.registry())
    }
}

impl Romanizer for Scheme {
    fn romanize(&self, text: &str) -> String {
        BoundScheme::bundled(*self).romanize(text)
    }
}
