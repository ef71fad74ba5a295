//! Input loading: the three accepted file kinds (algebra presentation,
//! arrangement, graph6) and their reduction to a common working form.

use holonomy::arrangement::{decone, graphic_arrangement, os_ideal, Arrangement};
use holonomy::error::{Error, Result};
use holonomy::graph::{parse_graph6, Graph};
use holonomy::presentation::{AlgebraPresentation, Flavor};

/// One parsed input file.
pub enum Input {
    Presentation(AlgebraPresentation),
    Arrangement(Arrangement),
    Graph(Graph),
}

/// A presentation together with the arrangement data it came from, when the
/// input was an arrangement or a graph.
pub struct Resolved {
    /// The working quotient: the input presentation itself, or the deconed
    /// Orlik–Solomon algebra of an arrangement/graph input.
    pub algebra: AlgebraPresentation,
    /// Full arrangement algebra, when one exists.
    pub os: Option<AlgebraPresentation>,
    pub split_factors: usize,
}

impl Input {
    /// Detect the kind from content: a presentation starts with
    /// `exterior <n>` or `free <n>`, an arrangement with a bare dimension
    /// line, and anything on a single line is tried as graph6.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let first = lines
            .next()
            .ok_or(Error::Parse { line: 1, message: "empty input file".into() })?;
        let word = first.split_whitespace().next().unwrap_or("");
        if word == "exterior" || word == "free" {
            return AlgebraPresentation::parse(text).map(Input::Presentation);
        }
        if word.parse::<usize>().is_ok() {
            return Arrangement::parse(text).map(Input::Arrangement);
        }
        if lines.next().is_none() {
            return parse_graph6(first).map(Input::Graph);
        }
        Err(Error::Parse {
            line: 1,
            message: "expected a presentation header, an arrangement dimension line, or a graph6 line".into(),
        })
    }

    /// Reduce to a working quotient algebra.
    pub fn resolve(self) -> Result<Resolved> {
        let os = match self {
            Input::Presentation(p) => {
                return Ok(Resolved { algebra: p, os: None, split_factors: 0 });
            }
            Input::Arrangement(arr) => os_ideal(&arr)?,
            Input::Graph(g) => os_ideal(&graphic_arrangement(&g)?)?,
        };
        let dec = decone(&os, 0)?;
        Ok(Resolved { algebra: dec.algebra, os: Some(os), split_factors: dec.split_factors })
    }

    pub fn graph(self) -> Result<Graph> {
        match self {
            Input::Graph(g) => Ok(g),
            _ => Err(Error::Invalid("this command needs a graph6 input".into())),
        }
    }
}

/// The quadratic dual of the working quotient; free-flavor inputs are taken
/// to be their own dual-side object.
pub fn dual_side(p: &AlgebraPresentation) -> Result<AlgebraPresentation> {
    match p.flavor {
        Flavor::Exterior => holonomy::dual::koszul_dual(p),
        Flavor::Free => Ok(p.clone()),
    }
}
