use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// A family of intervention targets over the vertices `1..=p`.
///
/// Targets are stored sorted and deduplicated; the empty target stands for
/// observational data. Every vertex must be left alone by at least one
/// target, which the constructors enforce.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TargetFamily {
    p: usize,
    targets: BTreeSet<Vec<usize>>,
}

fn normalize(p: usize, target: impl IntoIterator<Item = usize>) -> Result<Vec<usize>> {
    let mut t: Vec<usize> = target.into_iter().collect();
    if let Some(&v) = t.iter().find(|&&v| v == 0 || v > p) {
        return Err(Error::VertexOutOfRange { vertex: v, p });
    }
    t.sort_unstable();
    t.dedup();
    Ok(t)
}

impl TargetFamily {
    pub fn new<I, T>(p: usize, targets: I) -> Result<Self>
    where
        I: IntoIterator<Item = T>,
        T: IntoIterator<Item = usize>,
    {
        let targets = targets
            .into_iter()
            .map(|t| normalize(p, t))
            .collect::<Result<BTreeSet<_>>>()?;
        let family = TargetFamily { p, targets };
        family.check_covering()?;
        Ok(family)
    }

    /// `{∅}`: observational data only.
    pub fn observational(p: usize) -> Self {
        TargetFamily {
            p,
            targets: BTreeSet::from([Vec::new()]),
        }
    }

    fn check_covering(&self) -> Result<()> {
        let mut free = vec![false; self.p + 1];
        let mut remaining = self.p;
        for t in &self.targets {
            let mut inside = vec![false; self.p + 1];
            for &v in t {
                inside[v] = true;
            }
            for v in 1..=self.p {
                if !inside[v] && !free[v] {
                    free[v] = true;
                    remaining -= 1;
                }
            }
            if remaining == 0 {
                break;
            }
        }
        match (1..=self.p).find(|&v| !free[v]) {
            Some(v) => Err(Error::NotCovering(v)),
            None => Ok(()),
        }
    }

    /// The family with one more target. Adding a target never breaks the
    /// covering property.
    pub fn with_target(&self, target: impl IntoIterator<Item = usize>) -> Result<Self> {
        let t = normalize(self.p, target)?;
        let mut targets = self.targets.clone();
        targets.insert(t);
        Ok(TargetFamily { p: self.p, targets })
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn len(&self) -> usize {
        self.targets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.targets.is_empty()
    }

    pub fn targets(&self) -> impl Iterator<Item = &[usize]> {
        self.targets.iter().map(Vec::as_slice)
    }

    pub fn contains(&self, target: &[usize]) -> bool {
        let mut t = target.to_vec();
        t.sort_unstable();
        t.dedup();
        self.targets.contains(&t)
    }

    /// True iff some target contains exactly one of `a`, `b`.
    pub fn separates(&self, a: usize, b: usize) -> bool {
        self.targets
            .iter()
            .any(|t| t.binary_search(&a).is_ok() != t.binary_search(&b).is_ok())
    }

    /// Per-vertex membership lists: two vertices are separated by the family
    /// iff their lists differ.
    pub(crate) fn signatures(&self) -> Vec<Vec<u32>> {
        let mut sig = vec![Vec::new(); self.p + 1];
        for (i, t) in self.targets.iter().enumerate() {
            for &v in t {
                sig[v].push(i as u32);
            }
        }
        sig
    }

    /// Reads the family file format: one target per line as comma-separated
    /// vertices, `()` for the empty target, `#` starts a comment.
    pub fn parse(p: usize, text: &str) -> Result<Self> {
        let mut targets = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let t = raw.split('#').next().unwrap_or("").trim();
            if t.is_empty() {
                continue;
            }
            if t == "()" {
                targets.push(Vec::new());
                continue;
            }
            let target = t
                .split(',')
                .map(|s| {
                    s.trim().parse::<usize>().map_err(|_| Error::Parse {
                        line,
                        msg: format!("expected a vertex index, found {:?}", s.trim()),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            targets.push(normalize(p, target).map_err(|e| Error::Parse {
                line,
                msg: e.to_string(),
            })?);
        }
        if targets.is_empty() {
            return Err(Error::EmptyInput);
        }
        TargetFamily::new(p, targets)
    }
}

impl fmt::Display for TargetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for t in &self.targets {
            if t.is_empty() {
                writeln!(f, "()")?;
            } else {
                let parts: Vec<String> = t.iter().map(usize::to_string).collect();
                writeln!(f, "{}", parts.join(","))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn covering_is_enforced() {
        assert!(TargetFamily::new(3, [vec![1, 2, 3]]).is_err());
        assert!(matches!(
            TargetFamily::new(3, [vec![1, 2], vec![2, 3]]),
            Err(Error::NotCovering(2))
        ));
        assert!(TargetFamily::new(3, [vec![1], vec![2, 3]]).is_ok());
        assert!(matches!(
            TargetFamily::new(3, [vec![0]]),
            Err(Error::VertexOutOfRange { .. })
        ));
    }

    #[test]
    fn duplicates_collapse() {
        let f = TargetFamily::new(4, [vec![], vec![2, 1], vec![1, 2, 2]]).unwrap();
        assert_eq!(f.len(), 2);
        assert!(f.contains(&[2, 1]));
        assert_eq!(f.with_target([1, 2]).unwrap(), f);
    }

    #[test]
    fn separation() {
        let f = TargetFamily::new(4, [vec![], vec![1, 4]]).unwrap();
        assert!(f.separates(1, 2) && f.separates(4, 3));
        assert!(!f.separates(1, 4) && !f.separates(2, 3));
        let sig = f.signatures();
        assert_eq!(sig[1], sig[4]);
        assert_ne!(sig[1], sig[2]);
    }

    #[test]
    fn file_format_round_trip() {
        let text = "()\n1,4\n2\n";
        let f = TargetFamily::parse(4, text).unwrap();
        assert_eq!(f.len(), 3);
        assert_eq!(f.to_string(), text);
        assert!(TargetFamily::parse(4, "# nothing\n").is_err());
        assert!(matches!(
            TargetFamily::parse(4, "()\n1,x\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            TargetFamily::parse(4, "()\n5\n"),
            Err(Error::Parse { line: 2, .. })
        ));
    }
}
