//! Census caching: one canonical graph per line, sorted; the file name
//! carries the crate version and the census parameters, so stale caches are
//! simply never read.

use std::fs;
use std::path::PathBuf;

use anyhow::Context;

use diagcent::graphs::{census, CensusOptions, Multidigraph};
use diagcent::Caps;

pub struct Store {
    dir: Option<PathBuf>,
}

impl Store {
    /// `no_cache` disables both reads and writes. The directory resolution
    /// order is: explicit flag, `DIAGCENT_CACHE_DIR`, `XDG_CACHE_HOME`,
    /// `~/.cache`, system temp.
    pub fn new(explicit: &Option<PathBuf>, no_cache: bool) -> anyhow::Result<Store> {
        if no_cache {
            return Ok(Store { dir: None });
        }
        let dir = explicit
            .clone()
            .or_else(|| std::env::var_os("DIAGCENT_CACHE_DIR").map(PathBuf::from))
            .or_else(|| {
                std::env::var_os("XDG_CACHE_HOME")
                    .map(|base| PathBuf::from(base).join("diagcent"))
            })
            .or_else(|| {
                std::env::var_os("HOME")
                    .map(|home| PathBuf::from(home).join(".cache").join("diagcent"))
            })
            .unwrap_or_else(|| std::env::temp_dir().join("diagcent-cache"));
        Ok(Store { dir: Some(dir) })
    }

    fn file_for(&self, d: usize, options: CensusOptions) -> Option<PathBuf> {
        let dir = self.dir.as_ref()?;
        let vertices = options
            .max_vertices
            .map_or_else(|| "all".to_string(), |v| v.to_string());
        let cycles = u8::from(options.cycles_only);
        Some(dir.join(format!(
            "census-v{}-d{}-m{}-c{}.txt",
            env!("CARGO_PKG_VERSION"),
            d,
            vertices,
            cycles
        )))
    }

    pub fn census(
        &self,
        d: usize,
        options: CensusOptions,
        caps: &Caps,
    ) -> anyhow::Result<Vec<Multidigraph>> {
        if let Some(path) = self.file_for(d, options) {
            if let Ok(text) = fs::read_to_string(&path) {
                let mut graphs = Vec::new();
                let mut valid = true;
                for line in text.lines() {
                    match line.parse::<Multidigraph>() {
                        Ok(g) => graphs.push(g),
                        Err(_) => {
                            valid = false;
                            break;
                        }
                    }
                }
                if valid && graphs.windows(2).all(|w| w[0] < w[1]) {
                    return Ok(graphs);
                }
                eprintln!("cache file {} is corrupt; recomputing", path.display());
            }
        }
        if d >= 5 {
            eprintln!("computing census for d = {d} ...");
        }
        let graphs = census(d, options, caps)?;
        if let Some(path) = self.file_for(d, options) {
            if let Some(parent) = path.parent() {
                fs::create_dir_all(parent)
                    .with_context(|| format!("creating cache dir {}", parent.display()))?;
            }
            let mut text = String::new();
            for g in &graphs {
                text.push_str(&g.to_string());
                text.push('\n');
            }
            fs::write(&path, text)
                .with_context(|| format!("writing cache file {}", path.display()))?;
        }
        Ok(graphs)
    }
}
