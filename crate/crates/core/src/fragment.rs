//! XMI-style fragment paths (`//@bPack/@serviceimpl.0`).
//!
//! A path is the chain of containment features leading from the model root
//! to an element. Many-valued features carry a position index; single-valued
//! features (the sub-packages, the action mapping) do not. The root itself is
//! the empty path.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// One step of a [`FragmentPath`]: a containment feature and, for
/// many-valued features, the position inside it.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Segment {
    pub feature: String,
    pub index: Option<usize>,
}

impl Segment {
    pub fn single(feature: impl Into<String>) -> Self {
        Segment {
            feature: feature.into(),
            index: None,
        }
    }

    pub fn at(feature: impl Into<String>, index: usize) -> Self {
        Segment {
            feature: feature.into(),
            index: Some(index),
        }
    }
}

impl fmt::Display for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.index {
            Some(i) => write!(f, "@{}.{}", self.feature, i),
            None => write!(f, "@{}", self.feature),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FragmentPath {
    segments: Vec<Segment>,
}

impl FragmentPath {
    pub fn root() -> Self {
        FragmentPath::default()
    }

    pub fn from_segments(segments: Vec<Segment>) -> Self {
        FragmentPath { segments }
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn is_root(&self) -> bool {
        self.segments.is_empty()
    }

    /// Extends the path with a single-valued feature.
    pub fn child(&self, feature: &str) -> Self {
        self.with(Segment::single(feature))
    }

    /// Extends the path with a position inside a many-valued feature.
    pub fn item(&self, feature: &str, index: usize) -> Self {
        self.with(Segment::at(feature, index))
    }

    pub fn with(&self, segment: Segment) -> Self {
        let mut segments = self.segments.clone();
        segments.push(segment);
        FragmentPath { segments }
    }

    pub fn last(&self) -> Option<&Segment> {
        self.segments.last()
    }
}

impl fmt::Display for FragmentPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.segments.is_empty() {
            return Ok(());
        }
        f.write_str("/")?;
        for seg in &self.segments {
            write!(f, "/{seg}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("malformed fragment path {text:?}: {reason}")]
pub struct PathSyntaxError {
    pub text: String,
    pub reason: &'static str,
}

impl FromStr for FragmentPath {
    type Err = PathSyntaxError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let err = |reason| PathSyntaxError {
            text: text.to_string(),
            reason,
        };
        if text.is_empty() {
            return Ok(FragmentPath::root());
        }
        let rest = text.strip_prefix("//").ok_or_else(|| err("must start with //"))?;
        let mut segments = Vec::new();
        for raw in rest.split('/') {
            let raw = raw.strip_prefix('@').ok_or_else(|| err("segment must start with @"))?;
            let (feature, index) = match raw.split_once('.') {
                Some((feature, idx)) => {
                    if idx.is_empty() || !idx.bytes().all(|b| b.is_ascii_digit()) {
                        return Err(err("index must be a nonnegative integer"));
                    }
                    let idx = idx.parse().map_err(|_| err("index out of range"))?;
                    (feature, Some(idx))
                }
                None => (raw, None),
            };
            if !crate::naming::is_identifier(feature) {
                return Err(err("feature name must be an identifier"));
            }
            segments.push(Segment {
                feature: feature.to_string(),
                index,
            });
        }
        Ok(FragmentPath { segments })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ResolveError {
    #[error("unresolved-path: {0:?} does not address an element")]
    UnresolvedPath(String),
    #[error("detached-element: element is not contained in this model")]
    DetachedElement,
}

/// A borrowed view of one element of a model tree.
///
/// Implementors enumerate their direct containment children; resolution and
/// path computation are derived from that alone.
pub trait ModelElement<'a>: Copy {
    fn children(self) -> Vec<(Segment, Self)>;

    /// Address of the underlying element, used for identity comparison.
    fn addr(self) -> *const ();
}

pub(crate) fn resolve_from<'a, E: ModelElement<'a>>(root: E, path: &FragmentPath) -> Result<E, ResolveError> {
    let mut current = root;
    for seg in path.segments() {
        current = current
            .children()
            .into_iter()
            .find(|(s, _)| s == seg)
            .map(|(_, e)| e)
            .ok_or_else(|| ResolveError::UnresolvedPath(path.to_string()))?;
    }
    Ok(current)
}

pub(crate) fn path_from<'a, E: ModelElement<'a>>(root: E, target: E) -> Result<FragmentPath, ResolveError> {
    fn search<'a, E: ModelElement<'a>>(node: E, target: *const (), path: &mut Vec<Segment>) -> bool {
        if node.addr() == target {
            return true;
        }
        for (seg, child) in node.children() {
            path.push(seg);
            if search(child, target, path) {
                return true;
            }
            path.pop();
        }
        false
    }
    let mut segments = Vec::new();
    if search(root, target.addr(), &mut segments) {
        Ok(FragmentPath::from_segments(segments))
    } else {
        Err(ResolveError::DetachedElement)
    }
}

/// Depth-first pre-order walk over every element reachable from `root`,
/// paired with its path.
pub(crate) fn walk<'a, E: ModelElement<'a>>(root: E) -> Vec<(FragmentPath, E)> {
    fn go<'a, E: ModelElement<'a>>(node: E, path: FragmentPath, out: &mut Vec<(FragmentPath, E)>) {
        let children = node.children();
        out.push((path.clone(), node));
        for (seg, child) in children {
            go(child, path.with(seg), out);
        }
    }
    let mut out = Vec::new();
    go(root, FragmentPath::root(), &mut out);
    out
}
