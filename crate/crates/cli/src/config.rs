use std::path::PathBuf;

use llab_core::conjecture::{EnumerateOptions, Method};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub workers: usize,
    pub naive_cap: u64,
    pub allow_large: bool,
    pub cache_dir: PathBuf,
    pub use_cache: bool,
    pub format: Format,
}

impl RunConfig {
    pub fn enumerate_options(&self) -> EnumerateOptions {
        EnumerateOptions {
            workers: self.workers,
            naive_cap: self.naive_cap,
            allow_over_cap: self.allow_large,
        }
    }

    pub fn cache_file(&self, n: u64, method: Method) -> PathBuf {
        match method {
            Method::Naive => self.cache_dir.join(format!("N={n}.json")),
            Method::Structured => self.cache_dir.join(format!("N={n}.structured.json")),
        }
    }
}
