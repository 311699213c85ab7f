//! Resolution of `builtin:` URIs and spec-language files.

use std::fs;

use anyhow::{anyhow, bail, Context, Result};
use crystallo::constructions::{builtin_variety, named_sample, sample_set};
use crystallo::internal::StructureSpec;
use crystallo::specs::{check_identities, parse_blocks, AlgebraDecl, Block};
use crystallo::{FiniteAlgebra, VarietyPresentation};

const BUILTIN: &str = "builtin:";

fn read(path: &str) -> Result<Vec<Block>> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read `{path}`"))?;
    parse_blocks(&text).with_context(|| format!("in `{path}`"))
}

/// `CHyper` takes its `k` as a numeric suffix: `chyper2`.
fn builtin_variety_uri(name: &str) -> Result<VarietyPresentation> {
    let lower = name.to_ascii_lowercase();
    if let Some(k) = lower.strip_prefix("chyper") {
        let k: usize = k.parse().map_err(|_| anyhow!("`{name}`: expected chyperK with K ≥ 1"))?;
        return Ok(builtin_variety("CHyper", Some(k))?);
    }
    Ok(builtin_variety(name, None)?)
}

pub fn load_variety(spec: &str) -> Result<VarietyPresentation> {
    if let Some(name) = spec.strip_prefix(BUILTIN) {
        return builtin_variety_uri(name);
    }
    read(spec)?
        .into_iter()
        .find_map(|b| match b {
            Block::Variety(v) => Some(v),
            Block::Algebra(_) => None,
        })
        .ok_or_else(|| anyhow!("`{spec}` has no variety block"))
}

/// Varieties an algebra block may refer to: an explicit `--variety`, then
/// those declared in the same file, then the catalog.
pub struct Scope {
    explicit: Option<VarietyPresentation>,
}

impl Scope {
    pub fn new(variety: Option<&str>) -> Result<Self> {
        Ok(Self {
            explicit: variety.map(load_variety).transpose()?,
        })
    }

    pub fn variety(&self) -> Option<&VarietyPresentation> {
        self.explicit.as_ref()
    }

    fn resolve(&self, decl: &AlgebraDecl, local: &[VarietyPresentation]) -> Result<FiniteAlgebra> {
        let v = self
            .explicit
            .iter()
            .chain(local)
            .find(|v| v.name == decl.variety)
            .cloned()
            .or_else(|| {
                builtin_variety_uri(&decl.variety)
                    .ok()
                    .filter(|v| v.name.eq_ignore_ascii_case(&decl.variety))
            })
            .ok_or_else(|| anyhow!("algebra `{}`: unknown variety `{}`", decl.name, decl.variety))?;
        let mut decl = decl.clone();
        decl.variety = v.name.clone();
        Ok(decl.resolve(&v)?)
    }

    fn from_file(&self, path: &str) -> Result<Vec<FiniteAlgebra>> {
        let blocks = read(path)?;
        let local: Vec<VarietyPresentation> = blocks
            .iter()
            .filter_map(|b| match b {
                Block::Variety(v) => Some(v.clone()),
                Block::Algebra(_) => None,
            })
            .collect();
        blocks
            .iter()
            .filter_map(|b| match b {
                Block::Algebra(d) => Some(self.resolve(d, &local)),
                Block::Variety(_) => None,
            })
            .collect()
    }

    /// Every algebra named by `spec`: a `builtin:` sample or sample set, a
    /// file, or a comma-separated list of those.
    pub fn algebras(&self, spec: &str) -> Result<Vec<FiniteAlgebra>> {
        let mut out = Vec::new();
        for part in spec.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            match part.strip_prefix(BUILTIN) {
                Some(name) => match sample_set(name) {
                    Ok(set) => out.extend(set),
                    Err(_) => out.push(named_sample(name)?),
                },
                None => out.extend(self.from_file(part)?),
            }
        }
        if out.is_empty() {
            bail!("`{spec}` names no algebra");
        }
        Ok(out)
    }

    pub fn algebra(&self, spec: &str) -> Result<FiniteAlgebra> {
        let mut all = self.algebras(spec)?;
        if all.len() != 1 {
            bail!("`{spec}` names {} algebras, expected one", all.len());
        }
        Ok(all.pop().unwrap())
    }

    /// Like [`Scope::algebra`], rejecting algebras that violate the
    /// equations of the explicit variety, if one was given.
    pub fn valid_algebra(&self, spec: &str) -> Result<FiniteAlgebra> {
        let a = self.algebra(spec)?;
        if let Some(v) = &self.explicit {
            let report = check_identities(&a, &v.equations)?;
            if let Some(bad) = report.violations.first() {
                bail!("`{}` violates `{}`", a.name(), bad.equation);
            }
        }
        Ok(a)
    }
}

/// A built-in structure name (with or without `builtin:`) or a variety file.
pub fn load_structure(spec: &str) -> Result<StructureSpec> {
    let name = spec.strip_prefix(BUILTIN).unwrap_or(spec);
    match StructureSpec::builtin(name) {
        Ok(s) => Ok(s),
        Err(e) if spec.starts_with(BUILTIN) => Err(e.into()),
        Err(_) => Ok(StructureSpec::from_presentation(&load_variety(spec)?)),
    }
}

/// `"0,2,3"` as a sorted element list.
pub fn parse_elements(text: &str) -> Result<Vec<usize>> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<usize>().map_err(|_| anyhow!("`{s}` is not an element")))
        .collect()
}

/// `"0-1,1-0"` as pairs.
pub fn parse_pairs(text: &str) -> Result<Vec<(usize, usize)>> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            let (a, b) = s.split_once('-').ok_or_else(|| anyhow!("`{s}`: expected A-B"))?;
            Ok((a.trim().parse()?, b.trim().parse()?))
        })
        .collect()
}
