use std::fmt;
use std::path::Path;
use std::sync::Arc;

use covforge_core::error::BasisError;
use covforge_core::groups::{c_i, td, FiniteGroup, GroupFile, RepSum};

/// Failure classes with their process exit codes.
#[derive(Debug)]
pub enum Failure {
    /// Some check disagreed, or a tuple failed covariance.
    Verify(String),
    /// Bad flags, files or labels.
    Config(String),
    /// Selected numerators did not match the generating-function counts.
    Count(String),
}

impl Failure {
    pub fn code(&self) -> i32 {
        match self {
            Failure::Verify(_) => 1,
            Failure::Config(_) => 2,
            Failure::Count(_) => 3,
        }
    }

    pub fn config(e: impl fmt::Display) -> Self {
        Failure::Config(e.to_string())
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Verify(m) => write!(f, "verification failed: {m}"),
            Failure::Config(m) => write!(f, "configuration error: {m}"),
            Failure::Count(m) => write!(f, "count mismatch: {m}"),
        }
    }
}

impl From<BasisError> for Failure {
    fn from(e: BasisError) -> Self {
        match e {
            BasisError::CountMismatch { .. } => Failure::Count(e.to_string()),
            BasisError::NotCovariant { .. } | BasisError::NotInModule { .. } | BasisError::NotParameters { .. } => {
                Failure::Verify(e.to_string())
            }
            _ => Failure::Config(e.to_string()),
        }
    }
}

pub type Outcome<T> = Result<T, Failure>;

/// `ci`, `td` (any case) or a path to a JSON group file.
pub fn resolve_group(id: &str) -> Outcome<Arc<FiniteGroup>> {
    match id.to_ascii_lowercase().as_str() {
        "ci" => return Ok(c_i()),
        "td" => return Ok(td()),
        _ => {}
    }
    let path = Path::new(id);
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Config(format!("{}: {e}", path.display())))?;
    let file = GroupFile::from_json(&text).map_err(|e| Failure::Config(format!("{}: {e}", path.display())))?;
    file.build().map_err(|e| Failure::Config(format!("{}: {e}", path.display())))
}

/// Initial representation used when `--initial` is omitted.
fn default_initial(group: &FiniteGroup) -> Option<&'static str> {
    match group.name() {
        "Td" => Some("A1,E,F2,F2"),
        "Ci" => Some("A2,A2,A2"),
        _ => None,
    }
}

pub fn resolve_rep(group: &Arc<FiniteGroup>, initial: Option<&str>) -> Outcome<RepSum> {
    let spec = initial
        .or_else(|| default_initial(group))
        .ok_or_else(|| Failure::Config(format!("--initial is required for group {}", group.name())))?;
    let labels: Vec<&str> = spec.split(',').map(str::trim).collect();
    if labels.iter().any(|l| l.is_empty()) {
        return Err(Failure::Config(format!("malformed representation list {spec:?}")));
    }
    RepSum::new(group, &labels).map_err(Failure::config)
}

/// One irrep index, defaulting to the trivial irrep.
pub fn resolve_final(group: &FiniteGroup, label: Option<&str>) -> Outcome<usize> {
    match label {
        None => Ok(group.trivial_irrep()),
        Some(l) => group.irrep_index(l).map_err(Failure::config),
    }
}

/// `all` (or no flag) selects every irrep.
pub fn resolve_finals(group: &FiniteGroup, label: Option<&str>) -> Outcome<Vec<usize>> {
    match label {
        None | Some("all") => Ok((0..group.irreps().len()).collect()),
        Some(l) => Ok(vec![group.irrep_index(l).map_err(Failure::config)?]),
    }
}

pub fn partner_index(group: &FiniteGroup, irrep: usize, name: Option<&str>) -> Outcome<usize> {
    let Some(name) = name else { return Ok(0) };
    let ir = group.irrep(irrep);
    ir.partner_index(name).ok_or_else(|| {
        Failure::Config(format!(
            "irrep {} has no partner {name:?} (partners: {})",
            ir.label(),
            ir.partner_names().join(", ")
        ))
    })
}

/// Sizes the global rayon pool from `COVFORGE_THREADS` when set.
pub fn init_threads() -> Outcome<()> {
    let Ok(v) = std::env::var("COVFORGE_THREADS") else { return Ok(()) };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Failure::Config(format!("COVFORGE_THREADS must be a positive integer, got {v:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(Failure::config)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_follow_error_class() {
        let count = BasisError::CountMismatch {
            degree: 8,
            found: 0,
            expected: 1,
        };
        assert_eq!(Failure::from(count).code(), 3);
        let cov = BasisError::NotCovariant {
            irrep: "F2".into(),
            partner: 0,
        };
        assert_eq!(Failure::from(cov).code(), 1);
        assert_eq!(Failure::from(BasisError::Malformed("x".into())).code(), 2);
        assert!(resolve_group("/nonexistent/group.json").is_err());
        assert_eq!(resolve_group("TD").unwrap().name(), "Td");
    }
}
