//! Resolving a group from a family name and its parameters.

use std::fmt;
use std::str::FromStr;

use anyhow::{anyhow, bail, Context, Result};
use cycle_census_core::catalog;
use cycle_census_core::PermGroup;

use crate::data;

/// Wreath product components written like `c3`, `s4`, `a5`, `hol7`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Component {
    Cyclic(usize),
    Sym(usize),
    Alt(usize),
    Hol(usize),
}

impl Component {
    pub fn degree(&self) -> usize {
        match *self {
            Component::Cyclic(n) | Component::Sym(n) | Component::Alt(n) | Component::Hol(n) => n,
        }
    }

    pub fn build(&self) -> Result<PermGroup> {
        Ok(match *self {
            Component::Cyclic(n) => catalog::cyclic_regular(n),
            Component::Sym(n) => catalog::symmetric(n),
            Component::Alt(n) => catalog::alternating(n)?,
            Component::Hol(n) => catalog::holomorph_cyclic(n),
        })
    }
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Component::Cyclic(n) => write!(f, "c{n}"),
            Component::Sym(n) => write!(f, "s{n}"),
            Component::Alt(n) => write!(f, "a{n}"),
            Component::Hol(n) => write!(f, "hol{n}"),
        }
    }
}

impl FromStr for Component {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        let (ctor, digits): (fn(usize) -> Component, &str) = if let Some(d) = lower.strip_prefix("hol") {
            (Component::Hol, d)
        } else if let Some(d) = lower.strip_prefix('c') {
            (Component::Cyclic, d)
        } else if let Some(d) = lower.strip_prefix('s') {
            (Component::Sym, d)
        } else if let Some(d) = lower.strip_prefix('a') {
            (Component::Alt, d)
        } else {
            bail!("unknown component {s:?}; expected c<n>, s<n>, a<n> or hol<n>");
        };
        let n: usize = digits.parse().map_err(|_| anyhow!("bad degree in component {s:?}"))?;
        if n == 0 || n > 64 {
            bail!("component degree {n} out of range 1..=64");
        }
        if matches!(ctor(n), Component::Alt(m) if m < 3) {
            bail!("alternating component needs degree at least 3");
        }
        Ok(ctor(n))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Family {
    Cyclic,
    Holomorph,
    Sym,
    Alt,
    Wreath,
    Pgl,
    Pgammal,
    Duality,
    Sharpness,
    Spec,
}

/// Family plus whichever parameters it needs; unused parameters are rejected.
#[derive(Clone, Debug, Default)]
pub struct GroupRequest {
    pub family: Option<Family>,
    pub n: Option<usize>,
    pub inner: Option<Component>,
    pub outer: Option<Component>,
    pub d: Option<u32>,
    pub q: Option<u64>,
    pub k: Option<u32>,
    pub spec: Option<String>,
}

#[derive(Clone, Debug)]
pub struct NamedGroup {
    pub name: String,
    pub group: PermGroup,
}

fn need<T: Copy>(v: Option<T>, flag: &str, family: &str) -> Result<T> {
    v.ok_or_else(|| anyhow!("family {family} needs --{flag}"))
}

impl GroupRequest {
    pub fn is_empty(&self) -> bool {
        self.family.is_none() && self.spec.is_none()
    }

    fn check_unused(&self, allowed: &[&str]) -> Result<()> {
        let given = [
            ("n", self.n.is_some()),
            ("inner", self.inner.is_some()),
            ("outer", self.outer.is_some()),
            ("d", self.d.is_some()),
            ("q", self.q.is_some()),
            ("k", self.k.is_some()),
            ("spec", self.spec.is_some()),
        ];
        for (flag, present) in given {
            if present && !allowed.contains(&flag) {
                bail!("--{flag} does not apply to this family");
            }
        }
        Ok(())
    }

    pub fn resolve(&self) -> Result<NamedGroup> {
        let family = match (self.family, &self.spec) {
            (Some(f), _) => f,
            (None, Some(_)) => Family::Spec,
            (None, None) => bail!("no group given; use --family (see the catalog subcommand)"),
        };
        let (name, group) = match family {
            Family::Cyclic | Family::Holomorph | Family::Sym | Family::Alt => {
                self.check_unused(&["n"])?;
                let label = format!("{family:?}").to_ascii_lowercase();
                let n = need(self.n, "n", &label)?;
                if n == 0 || n > 1024 {
                    bail!("--n {n} out of range 1..=1024");
                }
                match family {
                    Family::Cyclic => (format!("C{n}"), catalog::cyclic_regular(n)),
                    Family::Holomorph => (format!("Hol(C{n})"), catalog::holomorph_cyclic(n)),
                    Family::Sym => (format!("Sym({n})"), catalog::symmetric(n)),
                    _ => (format!("Alt({n})"), catalog::alternating(n)?),
                }
            }
            Family::Wreath => {
                self.check_unused(&["inner", "outer"])?;
                let inner = need(self.inner, "inner", "wreath")?;
                let outer = need(self.outer, "outer", "wreath")?;
                if inner.degree() * outer.degree() > 1024 {
                    bail!("wreath degree {} too large", inner.degree() * outer.degree());
                }
                let g = catalog::wreath_imprimitive(&inner.build()?, &outer.build()?);
                (format!("{inner} wr {outer}"), g)
            }
            Family::Pgl | Family::Pgammal | Family::Duality => {
                self.check_unused(&["d", "q"])?;
                let label = format!("{family:?}").to_ascii_lowercase();
                let d = need(self.d, "d", &label)?;
                let q = need(self.q, "q", &label)?;
                match family {
                    Family::Pgl => (format!("PGL({d},{q})"), catalog::pgl(d, q)?),
                    Family::Pgammal => (format!("PGammaL({d},{q})"), catalog::pgammal(d, q)?),
                    _ => (format!("duality({d},{q})"), catalog::duality_extension(d, q)?),
                }
            }
            Family::Sharpness => {
                self.check_unused(&["k"])?;
                let k = need(self.k, "k", "sharpness")?;
                (format!("sharpness({k})"), catalog::sharpness_group(k)?)
            }
            Family::Spec => {
                self.check_unused(&["spec"])?;
                let arg = self.spec.as_deref().ok_or_else(|| anyhow!("family spec needs --spec PATH|NAME"))?;
                let path = data::resolve_spec_path(arg);
                let (spec, g) = data::load_group_spec(&path)
                    .with_context(|| format!("loading {}", path.display()))?;
                let name = if spec.name.is_empty() { arg.to_string() } else { spec.name };
                (name, g)
            }
        };
        Ok(NamedGroup { name, group })
    }
}

/// Human-readable description of the families, for the `catalog` subcommand.
pub fn catalog_text() -> String {
    let rows = [
        ("cyclic", "--n N", "regular cyclic group C_N", "census --family cyclic --n 12"),
        ("holomorph", "--n M", "Hol(C_M) = AGL_1(Z/M), maps i -> u*i + t", "census --family holomorph --n 7"),
        ("sym", "--n N", "symmetric group", "census --family sym --n 6"),
        ("alt", "--n N", "alternating group (N >= 3)", "census --family alt --n 5"),
        (
            "wreath",
            "--inner C --outer C",
            "imprimitive wreath product; C is c<n>, s<n>, a<n> or hol<n>",
            "census --family wreath --inner c3 --outer c3",
        ),
        ("pgl", "--d D --q Q", "PGL_D(Q) on projective points, Q <= 128", "census --family pgl --d 3 --q 2"),
        ("pgammal", "--d D --q Q", "PGammaL_D(Q), adds the field automorphisms", "census --family pgammal --d 2 --q 8"),
        (
            "duality",
            "--d 3 --q Q",
            "PGL_3(Q) with the graph automorphism on points and lines, Q in {2,3}",
            "census --family duality --d 3 --q 2",
        ),
        (
            "sharpness",
            "--k K",
            "degree 2*3^K group attaining the bound, 1 <= K <= 3",
            "census --family sharpness --k 1",
        ),
        ("spec", "--spec PATH|NAME", "group-spec file; bare names are looked up in the data directory", "census --spec m11"),
    ];
    let mut out = String::new();
    for (name, flags, what, example) in rows {
        out.push_str(&format!("{name:<10} {flags:<22} {what}\n{:<33} e.g. cycle-census {example}\n", ""));
    }
    out.push_str(&format!("\ndata directory: {} (override with {})\n", data::data_dir().display(), data::DATA_ENV));
    if let Ok(names) = data::bundled_specs() {
        out.push_str(&format!("group-spec files: {}\n", names.join(", ")));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn components() {
        assert_eq!("c3".parse::<Component>().unwrap(), Component::Cyclic(3));
        assert_eq!("HOL7".parse::<Component>().unwrap(), Component::Hol(7));
        assert_eq!("a5".parse::<Component>().unwrap(), Component::Alt(5));
        assert_eq!(Component::Sym(4).to_string(), "s4");
        assert!("a2".parse::<Component>().is_err());
        assert!("x3".parse::<Component>().is_err());
        assert!("s".parse::<Component>().is_err());
    }

    #[test]
    fn requests() {
        let req = GroupRequest {
            family: Some(Family::Wreath),
            inner: Some(Component::Cyclic(3)),
            outer: Some(Component::Cyclic(3)),
            ..Default::default()
        };
        let g = req.resolve().unwrap();
        assert_eq!((g.name.as_str(), g.group.order()), ("c3 wr c3", 81));
        let bad = GroupRequest { family: Some(Family::Sym), n: Some(4), k: Some(1), ..Default::default() };
        assert!(bad.resolve().is_err());
        let missing = GroupRequest { family: Some(Family::Pgl), d: Some(2), ..Default::default() };
        assert!(missing.resolve().is_err());
        assert!(GroupRequest::default().resolve().is_err());
    }
}
