//! Quivers with relations and their finite-dimensional quotient algebras.
//!
//! Paths are stored in *function order*: `[a, b, c]` is `a ∘ b ∘ c`, so `c`
//! is traversed first. A presentation written in diagram order is converted
//! on parse, and labels are rendered back in the order the file used.

mod build;
mod parse;

use std::fmt;

use crate::linalg::{FieldSpec, Scalar};

pub use build::{quotient_presentation_check, GeneratorMap, PathAlgebra, PresentationCheck};
pub use parse::parse_presentation;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Convention {
    /// `a b` means `b` then `a`.
    Function,
    /// `a b` means `a` then `b`.
    Diagram,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub label: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Quiver {
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn vertex_index(&self, label: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == label)
    }

    pub fn arrow_index(&self, label: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.label == label)
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }
}

/// A path in function order; `vertex` is only meaningful for trivial paths
/// but is kept equal to the source otherwise.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub vertex: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(vertex: usize) -> Self {
        Path { vertex, arrows: Vec::new() }
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn source(&self, q: &Quiver) -> usize {
        self.arrows.last().map_or(self.vertex, |&a| q.arrows[a].source)
    }

    pub fn target(&self, q: &Quiver) -> usize {
        self.arrows.first().map_or(self.vertex, |&a| q.arrows[a].target)
    }

    /// `self ∘ other`, when `other` ends where `self` starts.
    pub fn compose(&self, other: &Path, q: &Quiver) -> Option<Path> {
        if self.source(q) != other.target(q) {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&other.arrows);
        Some(Path {
            vertex: other.source(q),
            arrows,
        })
    }

    pub fn label(&self, q: &Quiver, convention: Convention) -> String {
        if self.is_trivial() {
            return format!("e_{}", q.vertices[self.vertex]);
        }
        let mut names: Vec<&str> = self.arrows.iter().map(|&a| q.arrows[a].label.as_str()).collect();
        if convention == Convention::Diagram {
            names.reverse();
        }
        names.join(" ")
    }
}

/// A linear combination of parallel paths of length at least two.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub terms: Vec<(Scalar, Path)>,
    pub line: usize,
    pub text: String,
}

impl Relation {
    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn max_len(&self) -> usize {
        self.terms.iter().map(|(_, p)| p.len()).max().unwrap_or(0)
    }

    pub fn min_len(&self) -> usize {
        self.terms.iter().map(|(_, p)| p.len()).min().unwrap_or(0)
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub field: FieldSpec,
    pub convention: Convention,
    pub quiver: Quiver,
    pub relations: Vec<Relation>,
    pub nilpotency: usize,
}

impl Presentation {
    /// Same presentation over another field. Coefficients are re-read from
    /// the relation text, so this fails when a denominator vanishes.
    pub fn with_field(&self, field: FieldSpec) -> crate::Result<Presentation> {
        let mut text = self.render();
        text = text.replacen(&format!("field {}", render_field(self.field)), &format!("field {}", render_field(field)), 1);
        parse_presentation(&text)
    }

    /// Renders the presentation back into the file format.
    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("field {}\n", render_field(self.field)));
        out.push_str(match self.convention {
            Convention::Function => "composition function\n",
            Convention::Diagram => "composition diagram\n",
        });
        out.push_str(&format!("vertices {}\n", self.quiver.vertices.join(", ")));
        for a in &self.quiver.arrows {
            out.push_str(&format!(
                "arrow {}: {} -> {}\n",
                a.label, self.quiver.vertices[a.source], self.quiver.vertices[a.target]
            ));
        }
        for r in &self.relations {
            out.push_str(&format!("relation {}\n", r.text));
        }
        out.push_str(&format!("nilpotency {}\n", self.nilpotency));
        out
    }
}

fn render_field(f: FieldSpec) -> String {
    match f {
        FieldSpec::Rationals => "Q".into(),
        FieldSpec::Prime(p) => format!("F {p}"),
    }
}
