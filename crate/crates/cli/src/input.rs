use std::path::PathBuf;

use clap::Args;
use spreadlab::{builtin, edge_list, graph6, Family, Graph, Result};

/// Exactly one graph source.
#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct GraphInput {
    /// graph6 string, e.g. `C~`
    #[arg(long, value_name = "STRING", allow_hyphen_values = true)]
    pub g6: Option<String>,

    /// Edge-list file: optional `n <count>` line, then 0-based `u v` pairs
    #[arg(long, value_name = "PATH")]
    pub edges: Option<PathBuf>,

    /// Named graph: G1 G2 G3 G4 H1 H2 K22 P4 S4 K23 P5 S5 Ki53
    #[arg(long, value_name = "NAME")]
    pub builtin: Option<String>,

    /// Family descriptor such as `kite(5,3)`, `cycle:6`, `complete_bipartite(2,3)`
    #[arg(long, value_name = "DESCRIPTOR")]
    pub family: Option<String>,
}

pub enum LoadError {
    Io(String),
    Lib(spreadlab::Error),
}

impl From<spreadlab::Error> for LoadError {
    fn from(e: spreadlab::Error) -> Self {
        LoadError::Lib(e)
    }
}

impl GraphInput {
    /// Short provenance string such as `builtin:G1`.
    pub fn describe(&self) -> String {
        match (&self.g6, &self.edges, &self.builtin, &self.family) {
            (Some(s), ..) => format!("g6:{s}"),
            (_, Some(p), ..) => format!("edges:{}", p.display()),
            (_, _, Some(name), _) => format!("builtin:{name}"),
            (.., Some(f)) => format!("family:{f}"),
            _ => unreachable!("clap enforces one input"),
        }
    }

    pub fn load(&self) -> std::result::Result<Graph, LoadError> {
        let lib = |r: Result<Graph>| r.map_err(LoadError::Lib);
        match (&self.g6, &self.edges, &self.builtin, &self.family) {
            (Some(s), ..) => lib(graph6::parse(s.trim())),
            (_, Some(path), ..) => {
                let text = std::fs::read_to_string(path).map_err(|e| LoadError::Io(format!("{}: {e}", path.display())))?;
                lib(edge_list::parse(&text))
            }
            (_, _, Some(name), _) => lib(builtin(name)),
            (.., Some(f)) => lib(f.parse::<Family>().and_then(|f| f.generate())),
            _ => unreachable!("clap enforces one input"),
        }
    }
}
