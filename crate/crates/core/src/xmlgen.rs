//! Compilation to the XML form consumed by programmatic enforcers, and the
//! matching decoder.
//!
//! The schema, version 1.0:
//!
//! ```xml
//! <?xml version="1.0" encoding="UTF-8"?>
//! <ai-txt version="1.0">
//!   <user-agent>
//!     <all-agents/>                      <!-- or one <agent name="..."/> per name -->
//!     <path value="/articles/today.html" file-type="html">
//!       <element name="p">
//!         <disallow>
//!           <action name="Train"/>         <!-- or <all-actions/> -->
//!         </disallow>
//!         <guide>
//!           <action name="Summarize"/>
//!           <guideline lang="en-US">text</guideline>
//!         </guide>
//!       </element>
//!     </path>
//!   </user-agent>
//! </ai-txt>
//! ```
//!
//! Output is byte-for-byte deterministic: two-space indentation, `\n` line
//! endings, children in source order.

use std::fmt::Write as _;

use quick_xml::events::Event;
use quick_xml::Reader;
use thiserror::Error;

use crate::diagnostic::Mode;
use crate::model::{
    action_from_string, Action, ActionList, AgentName, AgentSelector, DisallowRule, ElementBlock,
    FileType, GuideRule, Guideline, IndentUnit, LanguageTag, PathBlock, PolicyFile, Rule,
    SourceSpan, UserAgentBlock,
};
use crate::parser::is_valid_path;
use crate::validator::validate;

pub const SCHEMA_VERSION: &str = "1.0";
const ROOT: &str = "ai-txt";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XmlDocument {
    pub text: String,
}

impl XmlDocument {
    pub fn new(text: impl Into<String>) -> Self {
        XmlDocument { text: text.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum XmlError {
    #[error("refusing to compile an invalid policy: {}", .reasons.join("; "))]
    InvalidPolicy { reasons: Vec<String> },
    #[error("schema violation at {path}: {message}")]
    SchemaViolation { path: String, message: String },
}

fn is_xml_char(c: char) -> bool {
    matches!(c, '\u{9}' | '\u{A}' | '\u{D}' | '\u{20}'..='\u{D7FF}' | '\u{E000}'..='\u{FFFD}' | '\u{10000}'..)
}

fn escape_text(s: &str, out: &mut String) {
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '\r' => out.push_str("&#13;"),
            _ => out.push(c),
        }
    }
}

fn escape_attr(s: &str, out: &mut String) {
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\t' => out.push_str("&#9;"),
            '\n' => out.push_str("&#10;"),
            '\r' => out.push_str("&#13;"),
            _ => out.push(c),
        }
    }
}

fn guideline_text_problem(text: &str) -> Option<&'static str> {
    if text.trim().is_empty() {
        Some("guideline text is empty")
    } else if text.contains(['\n', '\r']) {
        Some("guideline text contains a line break")
    } else if text.starts_with([' ', '\t']) {
        Some("guideline text starts with whitespace")
    } else {
        None
    }
}

fn element_name_problem(name: &str) -> Option<&'static str> {
    if name.is_empty() {
        Some("element name is empty")
    } else if name.contains(['\n', '\r']) {
        Some("element name contains a line break")
    } else if name.trim_matches([' ', '\t']) != name {
        Some("element name has surrounding whitespace")
    } else {
        None
    }
}

fn action_list_problem(list: &ActionList) -> Option<String> {
    let ActionList::Named(actions) = list else {
        return None;
    };
    if actions.is_empty() {
        return Some("empty action list".into());
    }
    for (i, action) in actions.iter().enumerate() {
        if actions[..i].contains(action) {
            return Some(format!("duplicate action `{action}`"));
        }
        if let Action::Extension(raw) = action {
            if raw.is_empty() || raw == "*" || raw.contains([' ', '\n', '\r']) {
                return Some(format!("unusable extension action `{raw}`"));
            }
        }
    }
    None
}

/// Problems that the parser would never let through but a hand-built
/// policy might contain.
fn structural_problems(policy: &PolicyFile) -> Vec<String> {
    let mut problems = Vec::new();
    for block in &policy.blocks {
        if let AgentSelector::Named(names) = &block.agents {
            if names.is_empty() {
                problems.push("user-agent block with no agents".to_string());
            }
            for (i, name) in names.iter().enumerate() {
                if names[..i].contains(name) {
                    problems.push(format!("duplicate agent `{name}`"));
                }
            }
        }
        if block.paths.is_empty() {
            problems.push("user-agent block with no paths".to_string());
        }
        for path in &block.paths {
            if !is_valid_path(&path.path) {
                problems.push(format!("invalid path `{}`", path.path));
            }
            if path.elements.is_empty() {
                problems.push(format!("path `{}` has no elements", path.path));
            }
            for element in &path.elements {
                if let Some(p) = element_name_problem(&element.name) {
                    problems.push(p.to_string());
                }
                if element.rules.is_empty() {
                    problems.push(format!("element `{}` has no rules", element.name));
                }
                for rule in &element.rules {
                    if let Some(p) = action_list_problem(rule.actions()) {
                        problems.push(p);
                    }
                    if let Rule::Guide(guide) = rule {
                        if guide.guidelines.is_empty() {
                            problems.push("guide rule without guidelines".to_string());
                        }
                        for g in &guide.guidelines {
                            if let Some(p) = guideline_text_problem(&g.text) {
                                problems.push(p.to_string());
                            }
                            if g.language.as_str().is_empty() {
                                problems.push("empty language tag".to_string());
                            }
                        }
                    }
                }
            }
        }
    }
    problems
}

fn text_problems(policy: &PolicyFile) -> Option<String> {
    let mut strings: Vec<&str> = Vec::new();
    for block in &policy.blocks {
        strings.extend(block.agents.names().iter().map(AgentName::as_str));
        for path in &block.paths {
            strings.push(&path.path);
            for element in &path.elements {
                strings.push(&element.name);
                for rule in &element.rules {
                    strings.extend(rule.actions().actions().iter().map(Action::as_str));
                    if let Rule::Guide(guide) = rule {
                        for g in &guide.guidelines {
                            strings.push(g.language.as_str());
                            strings.push(&g.text);
                        }
                    }
                }
            }
        }
    }
    strings
        .into_iter()
        .find_map(|s| s.chars().find(|&c| !is_xml_char(c)))
        .map(|c| format!("character U+{:04X} cannot be represented in XML", c as u32))
}

fn write_actions(out: &mut String, indent: &str, actions: &ActionList) {
    match actions {
        ActionList::All => {
            let _ = writeln!(out, "{indent}<all-actions/>");
        }
        ActionList::Named(list) => {
            for action in list {
                out.push_str(indent);
                out.push_str("<action name=\"");
                escape_attr(action.as_str(), out);
                out.push_str("\"/>\n");
            }
        }
    }
}

/// Serializes a policy under the canonical schema. Refused if the policy
/// has validation errors (lenient rules) or structural defects.
pub fn compile_xml(policy: &PolicyFile) -> Result<XmlDocument, XmlError> {
    let mut reasons: Vec<String> = validate(policy, Mode::Lenient)
        .diagnostics
        .iter()
        .filter(|d| d.is_error())
        .map(|d| format!("{} {}", d.code, d.message))
        .collect();
    reasons.extend(structural_problems(policy));
    reasons.extend(text_problems(policy));
    if !reasons.is_empty() {
        return Err(XmlError::InvalidPolicy { reasons });
    }

    let mut out = String::from("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    if policy.blocks.is_empty() {
        let _ = writeln!(out, "<{ROOT} version=\"{SCHEMA_VERSION}\"/>");
        return Ok(XmlDocument { text: out });
    }

    let _ = writeln!(out, "<{ROOT} version=\"{SCHEMA_VERSION}\">");
    for block in &policy.blocks {
        out.push_str("  <user-agent>\n");
        match &block.agents {
            AgentSelector::AllAgents => out.push_str("    <all-agents/>\n"),
            AgentSelector::Named(names) => {
                for name in names {
                    let _ = writeln!(out, "    <agent name=\"{name}\"/>");
                }
            }
        }
        for path in &block.paths {
            out.push_str("    <path value=\"");
            escape_attr(&path.path, &mut out);
            let _ = writeln!(out, "\" file-type=\"{}\">", path.file_type);
            for element in &path.elements {
                out.push_str("      <element name=\"");
                escape_attr(&element.name, &mut out);
                out.push_str("\">\n");
                for rule in &element.rules {
                    match rule {
                        Rule::Disallow(disallow) => {
                            out.push_str("        <disallow>\n");
                            write_actions(&mut out, "          ", &disallow.actions);
                            out.push_str("        </disallow>\n");
                        }
                        Rule::Guide(guide) => {
                            out.push_str("        <guide>\n");
                            write_actions(&mut out, "          ", &guide.actions);
                            for g in &guide.guidelines {
                                out.push_str("          <guideline lang=\"");
                                escape_attr(g.language.as_str(), &mut out);
                                out.push_str("\">");
                                escape_text(&g.text, &mut out);
                                out.push_str("</guideline>\n");
                            }
                            out.push_str("        </guide>\n");
                        }
                    }
                }
                out.push_str("      </element>\n");
            }
            out.push_str("    </path>\n");
        }
        out.push_str("  </user-agent>\n");
    }
    let _ = writeln!(out, "</{ROOT}>");
    Ok(XmlDocument { text: out })
}

/// Minimal element tree built from the event stream.
struct Node {
    name: String,
    attrs: Vec<(String, String)>,
    children: Vec<Node>,
    text: String,
    offset: usize,
}

/// `parent/name[n]` where `n` counts same-named siblings, XPath style.
fn child_path(parent: &str, siblings: &[Node], index: usize) -> String {
    let name = &siblings[index].name;
    let n = siblings[..=index]
        .iter()
        .filter(|s| &s.name == name)
        .count();
    format!("{parent}/{name}[{n}]")
}

fn violation<T>(path: &str, message: impl Into<String>) -> Result<T, XmlError> {
    Err(XmlError::SchemaViolation {
        path: if path.is_empty() {
            "/".into()
        } else {
            path.into()
        },
        message: message.into(),
    })
}

fn read_tree(text: &str) -> Result<Node, XmlError> {
    let mut reader = Reader::from_str(text);
    let malformed = |e: &dyn std::fmt::Display| XmlError::SchemaViolation {
        path: "/".into(),
        message: format!("malformed XML: {e}"),
    };
    let mut stack: Vec<Node> = Vec::new();
    let mut root: Option<Node> = None;

    let make = |e: &quick_xml::events::BytesStart<'_>, offset: usize| -> Result<Node, XmlError> {
        let name = String::from_utf8_lossy(e.name().as_ref()).into_owned();
        let mut attrs = Vec::new();
        for attr in e.attributes() {
            let attr = attr.map_err(|e| malformed(&e))?;
            let key = String::from_utf8_lossy(attr.key.as_ref()).into_owned();
            let value = attr
                .unescape_value()
                .map_err(|e| malformed(&e))?
                .into_owned();
            attrs.push((key, value));
        }
        Ok(Node {
            name,
            attrs,
            children: Vec::new(),
            text: String::new(),
            offset,
        })
    };

    loop {
        let offset = reader.buffer_position() as usize;
        let event = reader.read_event().map_err(|e| malformed(&e))?;
        let finished = match event {
            Event::Start(e) => {
                stack.push(make(&e, offset)?);
                None
            }
            Event::Empty(e) => Some(make(&e, offset)?),
            Event::End(_) => stack.pop(),
            Event::Text(t) => {
                let s = t.unescape().map_err(|e| malformed(&e))?;
                match stack.last_mut() {
                    Some(node) => node.text.push_str(&s),
                    None if s.trim().is_empty() => {}
                    None => return violation("/", "text outside the root element"),
                }
                None
            }
            Event::CData(c) => {
                let s = String::from_utf8_lossy(&c).into_owned();
                match stack.last_mut() {
                    Some(node) => node.text.push_str(&s),
                    None => return violation("/", "CDATA outside the root element"),
                }
                None
            }
            Event::Eof => break,
            Event::Decl(_) | Event::Comment(_) | Event::PI(_) | Event::DocType(_) => None,
        };
        if let Some(node) = finished {
            match stack.last_mut() {
                Some(parent) => parent.children.push(node),
                None if root.is_none() => root = Some(node),
                None => return violation("/", "more than one root element"),
            }
        }
    }
    if !stack.is_empty() {
        return violation("/", "malformed XML: unclosed element");
    }
    root.map_or_else(|| violation("/", "document has no root element"), Ok)
}

struct Decoder<'a> {
    mode: Mode,
    /// Byte offsets where lines start.
    line_starts: Vec<usize>,
    text: &'a str,
}

impl Decoder<'_> {
    fn span(&self, node: &Node) -> SourceSpan {
        let line = self.line_starts.partition_point(|&s| s <= node.offset);
        let start = self.line_starts[line - 1];
        let column = self.text[start..node.offset].chars().count() + 1;
        SourceSpan::new(
            line as u32,
            column as u32,
            node.name.chars().count() as u32 + 1,
        )
    }

    fn attrs<'n>(
        &self,
        node: &'n Node,
        path: &str,
        allowed: &[&str],
    ) -> Result<Vec<&'n str>, XmlError> {
        for (key, _) in &node.attrs {
            if !allowed.contains(&key.as_str()) {
                return violation(
                    path,
                    format!("unexpected attribute `{key}` on <{}>", node.name),
                );
            }
        }
        allowed
            .iter()
            .map(|want| {
                node.attrs
                    .iter()
                    .find(|(k, _)| k == want)
                    .map(|(_, v)| v.as_str())
                    .map_or_else(
                        || {
                            violation(
                                path,
                                format!("<{}> is missing the `{want}` attribute", node.name),
                            )
                        },
                        Ok,
                    )
            })
            .collect()
    }

    fn no_text(&self, node: &Node, path: &str) -> Result<(), XmlError> {
        if node.text.trim().is_empty() {
            Ok(())
        } else {
            violation(path, format!("<{}> must not contain text", node.name))
        }
    }

    fn leaf(&self, node: &Node, path: &str) -> Result<(), XmlError> {
        self.no_text(node, path)?;
        if let Some(child) = node.children.first() {
            return violation(
                path,
                format!("<{}> must be empty, found <{}>", node.name, child.name),
            );
        }
        Ok(())
    }

    fn root(&self, node: &Node) -> Result<PolicyFile, XmlError> {
        let path = format!("/{}", node.name);
        if node.name != ROOT {
            return violation(
                &path,
                format!("root element must be <{ROOT}>, found <{}>", node.name),
            );
        }
        let [version] = self.attrs(node, &path, &["version"])?[..] else {
            unreachable!()
        };
        if version != SCHEMA_VERSION {
            return violation(&path, format!("unsupported schema version `{version}`"));
        }
        self.no_text(node, &path)?;
        let mut blocks = Vec::new();
        for (i, child) in node.children.iter().enumerate() {
            let child_path = child_path(&path, &node.children, i);
            if child.name != "user-agent" {
                return violation(
                    &child_path,
                    format!("expected <user-agent>, found <{}>", child.name),
                );
            }
            blocks.push(self.user_agent(child, &child_path)?);
        }
        Ok(PolicyFile {
            blocks,
            indent_unit: IndentUnit::TwoSpaces,
            source_name: String::new(),
        })
    }

    fn user_agent(&self, node: &Node, path: &str) -> Result<UserAgentBlock, XmlError> {
        self.attrs(node, path, &[])?;
        self.no_text(node, path)?;
        let mut children = node.children.iter().enumerate().peekable();
        let child_path = |i: usize, _: &str| child_path(path, &node.children, i);

        let agents = match children.peek() {
            Some((i, c)) if c.name == "all-agents" => {
                let p = child_path(*i, &c.name);
                self.attrs(c, &p, &[])?;
                self.leaf(c, &p)?;
                children.next();
                AgentSelector::AllAgents
            }
            _ => {
                let mut names: Vec<AgentName> = Vec::new();
                while let Some((i, c)) = children.next_if(|(_, c)| c.name == "agent") {
                    let p = child_path(i, &c.name);
                    let [raw] = self.attrs(c, &p, &["name"])?[..] else {
                        unreachable!()
                    };
                    self.leaf(c, &p)?;
                    let name = AgentName::new(raw).or_else(|e| violation(&p, e.to_string()))?;
                    if names.contains(&name) {
                        return violation(&p, format!("duplicate agent `{raw}`"));
                    }
                    names.push(name);
                }
                if names.is_empty() {
                    return violation(
                        path,
                        "<user-agent> must start with <all-agents/> or <agent> elements",
                    );
                }
                AgentSelector::Named(names)
            }
        };

        let mut paths = Vec::new();
        for (i, c) in children {
            let p = child_path(i, &c.name);
            if c.name != "path" {
                return violation(&p, format!("expected <path>, found <{}>", c.name));
            }
            paths.push(self.path(c, &p)?);
        }
        if paths.is_empty() {
            return violation(path, "<user-agent> needs at least one <path>");
        }
        Ok(UserAgentBlock {
            agents,
            paths,
            span: self.span(node),
        })
    }

    fn path(&self, node: &Node, path: &str) -> Result<PathBlock, XmlError> {
        let [value, file_type] = self.attrs(node, path, &["value", "file-type"])?[..] else {
            unreachable!()
        };
        self.no_text(node, path)?;
        if !is_valid_path(value) {
            return violation(path, format!("invalid path `{value}`"));
        }
        let file_type: FileType = file_type
            .parse()
            .or_else(|e: crate::model::ModelError| violation(path, e.to_string()))?;
        let mut elements = Vec::new();
        for (i, c) in node.children.iter().enumerate() {
            let p = child_path(path, &node.children, i);
            if c.name != "element" {
                return violation(&p, format!("expected <element>, found <{}>", c.name));
            }
            elements.push(self.element(c, &p)?);
        }
        if elements.is_empty() {
            return violation(path, "<path> needs at least one <element>");
        }
        Ok(PathBlock {
            path: value.to_string(),
            file_type,
            elements,
            span: self.span(node),
        })
    }

    fn element(&self, node: &Node, path: &str) -> Result<ElementBlock, XmlError> {
        let [name] = self.attrs(node, path, &["name"])?[..] else {
            unreachable!()
        };
        self.no_text(node, path)?;
        if let Some(problem) = element_name_problem(name) {
            return violation(path, problem);
        }
        let mut rules = Vec::new();
        for (i, c) in node.children.iter().enumerate() {
            let p = child_path(path, &node.children, i);
            let rule = match c.name.as_str() {
                "disallow" => self.disallow(c, &p)?,
                "guide" => self.guide(c, &p)?,
                other => {
                    return violation(
                        &p,
                        format!("expected <disallow> or <guide>, found <{other}>"),
                    )
                }
            };
            rules.push(rule);
        }
        if rules.is_empty() {
            return violation(path, "<element> needs at least one <disallow> or <guide>");
        }
        Ok(ElementBlock {
            name: name.to_string(),
            rules,
            span: self.span(node),
        })
    }

    /// Reads the leading action children; returns the list and how many
    /// children were consumed.
    fn actions(&self, node: &Node, path: &str) -> Result<(ActionList, usize), XmlError> {
        let child_path = |i: usize, _: &str| child_path(path, &node.children, i);
        match node.children.first() {
            Some(c) if c.name == "all-actions" => {
                let p = child_path(0, &c.name);
                self.attrs(c, &p, &[])?;
                self.leaf(c, &p)?;
                if let Some(next) = node
                    .children
                    .get(1)
                    .filter(|n| n.name == "action" || n.name == "all-actions")
                {
                    return violation(
                        &child_path(1, &next.name),
                        "<all-actions/> cannot be combined with other actions",
                    );
                }
                Ok((ActionList::All, 1))
            }
            _ => {
                let mut actions: Vec<Action> = Vec::new();
                for (i, c) in node.children.iter().enumerate() {
                    if c.name == "all-actions" {
                        return violation(
                            &child_path(i, &c.name),
                            "<all-actions/> cannot be combined with other actions",
                        );
                    }
                    if c.name != "action" {
                        break;
                    }
                    let p = child_path(i, &c.name);
                    let [raw] = self.attrs(c, &p, &["name"])?[..] else {
                        unreachable!()
                    };
                    self.leaf(c, &p)?;
                    let action = match action_from_string(raw) {
                        Ok(name) => Action::Known(name),
                        Err(e) => match self.mode {
                            Mode::Strict => return violation(&p, e.to_string()),
                            Mode::Lenient => {
                                if raw.is_empty()
                                    || raw == "*"
                                    || raw.contains([' ', '\t', '\n', '\r'])
                                {
                                    return violation(&p, format!("unusable action name `{raw}`"));
                                }
                                Action::Extension(raw.to_string())
                            }
                        },
                    };
                    if actions.contains(&action) {
                        return violation(&p, format!("duplicate action `{raw}`"));
                    }
                    actions.push(action);
                }
                let consumed = actions.len();
                match ActionList::named(actions) {
                    Some(list) => Ok((list, consumed)),
                    None => violation(
                        path,
                        format!(
                            "<{}> must start with <all-actions/> or <action> elements",
                            node.name
                        ),
                    ),
                }
            }
        }
    }

    fn disallow(&self, node: &Node, path: &str) -> Result<Rule, XmlError> {
        self.attrs(node, path, &[])?;
        self.no_text(node, path)?;
        let (actions, consumed) = self.actions(node, path)?;
        if let Some(extra) = node.children.get(consumed) {
            return violation(
                &child_path(path, &node.children, consumed),
                format!("unexpected <{}> in <disallow>", extra.name),
            );
        }
        Ok(Rule::Disallow(DisallowRule {
            actions,
            span: self.span(node),
        }))
    }

    fn guide(&self, node: &Node, path: &str) -> Result<Rule, XmlError> {
        self.attrs(node, path, &[])?;
        self.no_text(node, path)?;
        let (actions, consumed) = self.actions(node, path)?;
        let mut guidelines = Vec::new();
        for (i, c) in node.children.iter().enumerate().skip(consumed) {
            let p = child_path(path, &node.children, i);
            if c.name != "guideline" {
                return violation(&p, format!("expected <guideline>, found <{}>", c.name));
            }
            let [lang] = self.attrs(c, &p, &["lang"])?[..] else {
                unreachable!()
            };
            if let Some(child) = c.children.first() {
                return violation(
                    &p,
                    format!("<guideline> must contain only text, found <{}>", child.name),
                );
            }
            if lang.is_empty() || lang.contains(char::is_whitespace) {
                return violation(&p, format!("unusable language tag `{lang}`"));
            }
            if let Some(problem) = guideline_text_problem(&c.text) {
                return violation(&p, problem);
            }
            guidelines.push(Guideline {
                language: LanguageTag::new_unchecked(lang),
                text: c.text.clone(),
            });
        }
        if guidelines.is_empty() {
            return violation(path, "<guide> needs at least one <guideline>");
        }
        Ok(Rule::Guide(GuideRule {
            actions,
            guidelines,
            span: self.span(node),
        }))
    }
}

/// Reads a document in the canonical schema back into a policy. Spans point
/// at the corresponding start tags in the XML text. Language tags are not
/// shape-checked here; that is the validator's job.
pub fn decode_xml(doc: &XmlDocument, mode: Mode) -> Result<PolicyFile, XmlError> {
    let root = read_tree(&doc.text)?;
    let line_starts = std::iter::once(0)
        .chain(doc.text.match_indices('\n').map(|(i, _)| i + 1))
        .collect();
    let decoder = Decoder {
        mode,
        line_starts,
        text: &doc.text,
    };
    decoder.root(&root)
}
