//! On-disk cache of g-families in the canonical series text form.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use loopyang_core::cartan::CartanDatum;
use loopyang_core::phi::{g_family, GFamily, Gauge};
use loopyang_core::series::text::{from_text, to_text};
use loopyang_core::y0::Y0Algebra;

pub struct SeriesCache {
    dir: PathBuf,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Lookup {
    Hit,
    Miss,
}

impl SeriesCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        SeriesCache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn key(c: &CartanDatum, order: u32, gauge: Gauge) -> String {
        let rows: Vec<String> = c.a.iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("_")).collect();
        let d: Vec<String> = c.d.iter().map(|x| x.to_string()).collect();
        format!("g-{}-a{}-d{}-N{}-{}", c.name, rows.join("."), d.join("_"), order, gauge)
    }

    /// Loads the family from disk, or builds and stores it.
    pub fn g_family(&self, c: &CartanDatum, alg: &Y0Algebra, gauge: Gauge) -> io::Result<(GFamily, Lookup)> {
        let path = self.dir.join(Self::key(c, alg.order(), gauge));
        let n = alg.nodes();
        let names = |sign: &'static str| (0..n).map(move |i| format!("{}{}.txt", sign, i + 1));
        if path.is_dir() {
            let ctx = alg.ctx();
            let read = |sign: &'static str| -> Option<Vec<_>> {
                names(sign).map(|f| fs::read_to_string(path.join(f)).ok().and_then(|t| from_text(&ctx, &t).ok())).collect()
            };
            if let (Some(plus), Some(minus)) = (read("plus"), read("minus")) {
                return Ok((GFamily { plus, minus, gauge: gauge.to_string() }, Lookup::Hit));
            }
        }
        let g = g_family(alg, gauge);
        fs::create_dir_all(&path)?;
        for (f, s) in names("plus").zip(&g.plus).chain(names("minus").zip(&g.minus)) {
            fs::write(path.join(f), to_text(s))?;
        }
        Ok((g, Lookup::Miss))
    }

    /// Removes every cached entry; returns how many were removed.
    pub fn purge(&self) -> io::Result<usize> {
        if !self.dir.is_dir() {
            return Ok(0);
        }
        let mut count = 0;
        for entry in fs::read_dir(&self.dir)? {
            let p = entry?.path();
            if p.is_dir() && p.file_name().and_then(|s| s.to_str()).is_some_and(|s| s.starts_with("g-")) {
                fs::remove_dir_all(&p)?;
                count += 1;
            }
        }
        Ok(count)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hit_equals_miss_and_purge_clears() {
        let dir = std::env::temp_dir().join(format!("loopyang-cache-test-{}", std::process::id()));
        let cache = SeriesCache::new(&dir);
        let c = CartanDatum::builtin("A2").unwrap();
        let alg = Y0Algebra::semisimple(&c, 4).unwrap();
        let (a, la) = cache.g_family(&c, &alg, Gauge::Rational).unwrap();
        let (b, lb) = cache.g_family(&c, &alg, Gauge::Rational).unwrap();
        assert_eq!((la, lb), (Lookup::Miss, Lookup::Hit));
        assert_eq!(a, b);
        assert_eq!(cache.purge().unwrap(), 1);
        assert_eq!(cache.purge().unwrap(), 0);
        fs::remove_dir_all(&dir).unwrap();
    }
}
