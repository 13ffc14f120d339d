//! Minimal element tree over quick-xml, plus the indented writer used for
//! deterministic output.

use quick_xml::events::{BytesStart, Event};
use quick_xml::Reader;

use super::ModelIoError;

#[derive(Debug, Clone)]
pub(crate) struct XmlElement {
    pub name: String,
    pub attrs: Vec<(String, String)>,
    pub children: Vec<XmlElement>,
    pub has_text: bool,
    pub line: usize,
}

impl XmlElement {
    pub fn attr(&self, key: &str) -> Option<&str> {
        self.attrs.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    /// Rejects unknown attributes, missing required ones, and text content.
    /// Namespace declarations are accepted anywhere.
    pub fn check_shape(&self, required: &[&str], optional: &[&str]) -> Result<(), ModelIoError> {
        if self.has_text {
            return Err(self.violation("unexpected text content"));
        }
        for (key, _) in &self.attrs {
            let known = required.contains(&key.as_str())
                || optional.contains(&key.as_str())
                || key == "xmlns"
                || key.starts_with("xmlns:");
            if !known {
                return Err(self.violation(&format!("unknown attribute {key:?}")));
            }
        }
        for key in required {
            if self.attr(key).is_none() {
                return Err(self.violation(&format!("missing attribute {key:?}")));
            }
        }
        Ok(())
    }

    pub fn required(&self, key: &str) -> Result<&str, ModelIoError> {
        self.attr(key)
            .ok_or_else(|| self.violation(&format!("missing attribute {key:?}")))
    }

    pub fn violation(&self, what: &str) -> ModelIoError {
        ModelIoError::SchemaViolation(format!("line {}: <{}>: {what}", self.line, self.name))
    }

    pub fn unknown_child(&self, child: &XmlElement) -> ModelIoError {
        ModelIoError::SchemaViolation(format!(
            "line {}: unexpected element <{}> inside <{}>",
            child.line, child.name, self.name
        ))
    }
}

fn line_of(text: &str, offset: u64) -> usize {
    let end = (offset as usize).min(text.len());
    text.as_bytes()[..end].iter().filter(|&&b| b == b'\n').count() + 1
}

fn malformed(text: &str, offset: u64, err: impl std::fmt::Display) -> ModelIoError {
    ModelIoError::XmlMalformed(format!("line {}: {err}", line_of(text, offset)))
}

fn open(text: &str, reader: &Reader<&[u8]>, start: &BytesStart<'_>) -> Result<XmlElement, ModelIoError> {
    let pos = reader.buffer_position();
    let name = String::from_utf8(start.name().as_ref().to_vec()).map_err(|e| malformed(text, pos, e))?;
    let mut attrs = Vec::new();
    for attr in start.attributes() {
        let attr = attr.map_err(|e| malformed(text, pos, e))?;
        let key = String::from_utf8(attr.key.as_ref().to_vec()).map_err(|e| malformed(text, pos, e))?;
        let value = attr.unescape_value().map_err(|e| malformed(text, pos, e))?;
        attrs.push((key, value.into_owned()));
    }
    Ok(XmlElement {
        name,
        attrs,
        children: Vec::new(),
        has_text: false,
        line: line_of(text, pos),
    })
}

/// Parses a whole document into its root element.
pub(crate) fn parse_document(text: &str) -> Result<XmlElement, ModelIoError> {
    let mut reader = Reader::from_str(text);
    reader.config_mut().trim_text(true);
    let mut stack: Vec<XmlElement> = Vec::new();
    let mut root: Option<XmlElement> = None;

    loop {
        let event = reader
            .read_event()
            .map_err(|e| malformed(text, reader.error_position(), e))?;
        match event {
            Event::Start(start) => {
                if root.is_some() && stack.is_empty() {
                    return Err(malformed(text, reader.buffer_position(), "more than one root element"));
                }
                stack.push(open(text, &reader, &start)?);
            }
            Event::Empty(start) => {
                let el = open(text, &reader, &start)?;
                match stack.last_mut() {
                    Some(parent) => parent.children.push(el),
                    None if root.is_none() => root = Some(el),
                    None => return Err(malformed(text, reader.buffer_position(), "more than one root element")),
                }
            }
            Event::End(_) => {
                let el = stack.pop().expect("quick-xml checks end names");
                match stack.last_mut() {
                    Some(parent) => parent.children.push(el),
                    None => root = Some(el),
                }
            }
            Event::Text(t) => {
                let content = t.unescape().map_err(|e| malformed(text, reader.buffer_position(), e))?;
                if !content.trim().is_empty() {
                    match stack.last_mut() {
                        Some(el) => el.has_text = true,
                        None => {
                            return Err(malformed(
                                text,
                                reader.buffer_position(),
                                "text outside the root element",
                            ))
                        }
                    }
                }
            }
            Event::CData(_) => match stack.last_mut() {
                Some(el) => el.has_text = true,
                None => {
                    return Err(malformed(
                        text,
                        reader.buffer_position(),
                        "CDATA outside the root element",
                    ))
                }
            },
            Event::Eof => break,
            Event::Decl(_) | Event::Comment(_) | Event::PI(_) | Event::DocType(_) => {}
        }
    }
    if !stack.is_empty() {
        return Err(malformed(text, reader.buffer_position(), "unexpected end of document"));
    }
    root.ok_or_else(|| ModelIoError::XmlMalformed("document has no root element".to_string()))
}

pub(crate) const DECLARATION: &str = r#"<?xml version="1.0" encoding="UTF-8"?>"#;

/// Two-space indented XML text with attributes in caller order.
pub(crate) struct XmlWriter {
    out: String,
    depth: usize,
}

impl XmlWriter {
    pub fn new() -> Self {
        let mut out = String::new();
        out.push_str(DECLARATION);
        out.push('\n');
        XmlWriter { out, depth: 0 }
    }

    fn tag(&mut self, name: &str, attrs: &[(&str, &str)]) {
        for _ in 0..self.depth {
            self.out.push_str("  ");
        }
        self.out.push('<');
        self.out.push_str(name);
        for (k, v) in attrs {
            self.out.push(' ');
            self.out.push_str(k);
            self.out.push_str("=\"");
            self.out.push_str(&quick_xml::escape::escape(*v));
            self.out.push('"');
        }
    }

    pub fn open(&mut self, name: &str, attrs: &[(&str, &str)]) {
        self.tag(name, attrs);
        self.out.push_str(">\n");
        self.depth += 1;
    }

    pub fn close(&mut self, name: &str) {
        self.depth -= 1;
        for _ in 0..self.depth {
            self.out.push_str("  ");
        }
        self.out.push_str("</");
        self.out.push_str(name);
        self.out.push_str(">\n");
    }

    pub fn empty(&mut self, name: &str, attrs: &[(&str, &str)]) {
        self.tag(name, attrs);
        self.out.push_str("/>\n");
    }

    pub fn finish(self) -> String {
        debug_assert_eq!(self.depth, 0);
        self.out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builds_tree() {
        let root = parse_document("<a x=\"1\">\n  <b/>\n  <c><d y=\"&amp;\"/></c>\n</a>").unwrap();
        assert_eq!(root.name, "a");
        assert_eq!(root.attr("x"), Some("1"));
        assert_eq!(root.children.len(), 2);
        assert_eq!(root.children[1].children[0].attr("y"), Some("&"));
        assert_eq!(root.children[1].line, 3);
    }

    #[test]
    fn malformed_inputs() {
        for bad in ["", "<a>", "<a></b>", "<a/><b/>", "not xml", "<a x=1/>"] {
            assert!(
                matches!(parse_document(bad), Err(ModelIoError::XmlMalformed(_))),
                "{bad:?}"
            );
        }
    }

    #[test]
    fn writer_escapes_and_indents() {
        let mut w = XmlWriter::new();
        w.open("r", &[("name", "a&b")]);
        w.empty("c", &[("name", "\"q\"")]);
        w.close("r");
        assert_eq!(
            w.finish(),
            "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<r name=\"a&amp;b\">\n  <c name=\"&quot;q&quot;\"/>\n</r>\n"
        );
    }
}
