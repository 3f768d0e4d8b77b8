//! AST for ai.txt documents.
//!
//! Every type here is a plain value: parsed once, never mutated, compared
//! structurally. Source locations ride along on block-level nodes so that
//! diagnostics and match traces can point back into the original text.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

/// A location in source text. Lines and columns are 1-based and counted in
/// characters, not bytes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SourceSpan {
    pub line: u32,
    pub column: u32,
    pub length: u32,
}

impl SourceSpan {
    pub fn new(line: u32, column: u32, length: u32) -> Self {
        debug_assert!(line >= 1 && column >= 1);
        SourceSpan {
            line: line.max(1),
            column: column.max(1),
            length,
        }
    }
}

impl Default for SourceSpan {
    fn default() -> Self {
        SourceSpan::new(1, 1, 0)
    }
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("unknown action `{0}`")]
    UnknownAction(String),
    #[error("invalid agent name `{0}`: only a-z, A-Z, 0-9 and `_` are allowed")]
    InvalidAgentName(String),
    #[error("invalid language tag `{0}`: expected 2-3 letters, optionally followed by `-` and 2 letters")]
    InvalidLanguageTag(String),
    #[error("unknown file type `{0}`: expected html, json or xml")]
    UnknownFileType(String),
}

macro_rules! action_names {
    ($($variant:ident),+ $(,)?) => {
        /// The curated vocabulary of regulated actions.
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum ActionName {
            $($variant),+
        }

        impl ActionName {
            /// All members, alphabetically.
            pub const ALL: [ActionName; 14] = [$(ActionName::$variant),+];

            pub fn as_str(self) -> &'static str {
                match self {
                    $(ActionName::$variant => stringify!($variant)),+
                }
            }
        }

        impl FromStr for ActionName {
            type Err = ModelError;

            fn from_str(s: &str) -> Result<Self, Self::Err> {
                match s {
                    $(stringify!($variant) => Ok(ActionName::$variant),)+
                    _ => Err(ModelError::UnknownAction(s.to_string())),
                }
            }
        }
    };
}

action_names!(
    Analyze, Cite, Clip, Describe, Evaluate, Extract, Index, Manipulate, Rephrase, Return,
    Summarize, Train, Transcribe, Translate,
);

impl fmt::Display for ActionName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Looks up an action by its exact, case-sensitive name. `*` is not an
/// action; wildcards are handled by [`ActionList`].
pub fn action_from_string(s: &str) -> Result<ActionName, ModelError> {
    s.parse()
}

/// The 14 regulated actions in alphabetical order.
pub fn vocabulary() -> Vec<ActionName> {
    ActionName::ALL.to_vec()
}

/// An action as written in a rule: either a member of the vocabulary or an
/// unrecognized token carried over in lenient mode.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Action {
    Known(ActionName),
    Extension(String),
}

impl Action {
    pub fn as_str(&self) -> &str {
        match self {
            Action::Known(name) => name.as_str(),
            Action::Extension(raw) => raw,
        }
    }

    pub fn is_extension(&self) -> bool {
        matches!(self, Action::Extension(_))
    }
}

impl From<ActionName> for Action {
    fn from(name: ActionName) -> Self {
        Action::Known(name)
    }
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The actions a rule applies to: `*` or a non-empty, duplicate-free list.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ActionList {
    All,
    Named(Vec<Action>),
}

impl ActionList {
    /// Builds a named list, dropping repeats but keeping first-seen order.
    /// Returns `None` for an empty input.
    pub fn named<I, A>(actions: I) -> Option<ActionList>
    where
        I: IntoIterator<Item = A>,
        A: Into<Action>,
    {
        let mut out: Vec<Action> = Vec::new();
        for action in actions {
            let action = action.into();
            if !out.contains(&action) {
                out.push(action);
            }
        }
        (!out.is_empty()).then_some(ActionList::Named(out))
    }

    pub fn is_all(&self) -> bool {
        matches!(self, ActionList::All)
    }

    pub fn contains(&self, action: ActionName) -> bool {
        match self {
            ActionList::All => true,
            ActionList::Named(list) => list.contains(&Action::Known(action)),
        }
    }

    pub fn contains_action(&self, action: &Action) -> bool {
        match self {
            ActionList::All => true,
            ActionList::Named(list) => list.contains(action),
        }
    }

    /// Named members; empty for `*`.
    pub fn actions(&self) -> &[Action] {
        match self {
            ActionList::All => &[],
            ActionList::Named(list) => list,
        }
    }
}

impl fmt::Display for ActionList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ActionList::All => f.write_str("*"),
            ActionList::Named(list) => {
                for (i, action) in list.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ")?;
                    }
                    f.write_str(action.as_str())?;
                }
                Ok(())
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FileType {
    Html,
    Json,
    Xml,
}

impl FileType {
    pub const ALL: [FileType; 3] = [FileType::Html, FileType::Json, FileType::Xml];

    pub fn as_str(self) -> &'static str {
        match self {
            FileType::Html => "html",
            FileType::Json => "json",
            FileType::Xml => "xml",
        }
    }
}

impl FromStr for FileType {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "html" => Ok(FileType::Html),
            "json" => Ok(FileType::Json),
            "xml" => Ok(FileType::Xml),
            _ => Err(ModelError::UnknownFileType(s.to_string())),
        }
    }
}

impl fmt::Display for FileType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// An agent identifier matching `[a-zA-Z0-9_]+`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AgentName(String);

impl AgentName {
    pub fn new(name: impl Into<String>) -> Result<Self, ModelError> {
        let name = name.into();
        if is_agent_name(&name) {
            Ok(AgentName(name))
        } else {
            Err(ModelError::InvalidAgentName(name))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for AgentName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

pub fn is_agent_name(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'_')
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum AgentSelector {
    AllAgents,
    Named(Vec<AgentName>),
}

impl AgentSelector {
    pub fn names(&self) -> &[AgentName] {
        match self {
            AgentSelector::AllAgents => &[],
            AgentSelector::Named(names) => names,
        }
    }

    pub fn names_agent(&self, agent: &str) -> bool {
        self.names().iter().any(|n| n.as_str() == agent)
    }
}

/// A language identifier such as `en` or `en-US`.
///
/// Only the shape is checked (2-3 letter primary subtag, optional 2 letter
/// region). Values that fail the check can still be held via
/// [`LanguageTag::new_unchecked`] so that the validator can report them.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LanguageTag(String);

impl LanguageTag {
    pub fn parse(raw: &str) -> Result<Self, ModelError> {
        if is_language_tag(raw) {
            Ok(LanguageTag(raw.to_string()))
        } else {
            Err(ModelError::InvalidLanguageTag(raw.to_string()))
        }
    }

    pub fn new_unchecked(raw: impl Into<String>) -> Self {
        LanguageTag(raw.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn is_well_formed(&self) -> bool {
        is_language_tag(&self.0)
    }

    pub fn primary(&self) -> &str {
        self.0.split('-').next().unwrap_or("")
    }

    pub fn region(&self) -> Option<&str> {
        self.0.split_once('-').map(|(_, region)| region)
    }
}

impl fmt::Display for LanguageTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

pub fn is_language_tag(s: &str) -> bool {
    let letters = |part: &str| part.bytes().all(|b| b.is_ascii_alphabetic());
    match s.split_once('-') {
        None => (2..=3).contains(&s.len()) && letters(s),
        Some((primary, region)) => {
            (2..=3).contains(&primary.len())
                && letters(primary)
                && region.len() == 2
                && letters(region)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Guideline {
    pub language: LanguageTag,
    pub text: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GuideRule {
    pub actions: ActionList,
    pub guidelines: Vec<Guideline>,
    pub span: SourceSpan,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DisallowRule {
    pub actions: ActionList,
    pub span: SourceSpan,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Rule {
    Disallow(DisallowRule),
    Guide(GuideRule),
}

impl Rule {
    pub fn actions(&self) -> &ActionList {
        match self {
            Rule::Disallow(rule) => &rule.actions,
            Rule::Guide(rule) => &rule.actions,
        }
    }

    pub fn span(&self) -> SourceSpan {
        match self {
            Rule::Disallow(rule) => rule.span,
            Rule::Guide(rule) => rule.span,
        }
    }

    pub fn keyword(&self) -> &'static str {
        match self {
            Rule::Disallow(_) => "Disallow",
            Rule::Guide(_) => "Guide",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ElementBlock {
    pub name: String,
    pub rules: Vec<Rule>,
    pub span: SourceSpan,
}

impl ElementBlock {
    pub fn is_wildcard(&self) -> bool {
        self.name == "*"
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PathBlock {
    pub path: String,
    pub file_type: FileType,
    pub elements: Vec<ElementBlock>,
    pub span: SourceSpan,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UserAgentBlock {
    pub agents: AgentSelector,
    pub paths: Vec<PathBlock>,
    pub span: SourceSpan,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum IndentUnit {
    #[default]
    TwoSpaces,
    FourSpaces,
    Tab,
}

impl IndentUnit {
    pub fn as_str(self) -> &'static str {
        match self {
            IndentUnit::TwoSpaces => "  ",
            IndentUnit::FourSpaces => "    ",
            IndentUnit::Tab => "\t",
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            IndentUnit::TwoSpaces => "two-spaces",
            IndentUnit::FourSpaces => "four-spaces",
            IndentUnit::Tab => "tab",
        }
    }
}

/// One parsed ai.txt document.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct PolicyFile {
    pub blocks: Vec<UserAgentBlock>,
    pub indent_unit: IndentUnit,
    pub source_name: String,
}

impl PolicyFile {
    pub fn empty(source_name: impl Into<String>) -> Self {
        PolicyFile {
            blocks: Vec::new(),
            indent_unit: IndentUnit::default(),
            source_name: source_name.into(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// A copy with every span reset, the indent unit set to the canonical
    /// one and the source name cleared. Two policies with the same content
    /// compare equal after this, wherever they were read from.
    pub fn strip_locations(&self) -> PolicyFile {
        let blank = SourceSpan::default();
        let blocks = self
            .blocks
            .iter()
            .map(|block| UserAgentBlock {
                agents: block.agents.clone(),
                span: blank,
                paths: block
                    .paths
                    .iter()
                    .map(|path| PathBlock {
                        path: path.path.clone(),
                        file_type: path.file_type,
                        span: blank,
                        elements: path
                            .elements
                            .iter()
                            .map(|element| ElementBlock {
                                name: element.name.clone(),
                                span: blank,
                                rules: element
                                    .rules
                                    .iter()
                                    .map(|rule| match rule {
                                        Rule::Disallow(r) => Rule::Disallow(DisallowRule {
                                            actions: r.actions.clone(),
                                            span: blank,
                                        }),
                                        Rule::Guide(r) => Rule::Guide(GuideRule {
                                            actions: r.actions.clone(),
                                            guidelines: r.guidelines.clone(),
                                            span: blank,
                                        }),
                                    })
                                    .collect(),
                            })
                            .collect(),
                    })
                    .collect(),
            })
            .collect();
        PolicyFile {
            blocks,
            indent_unit: IndentUnit::default(),
            source_name: String::new(),
        }
    }

    /// Structural equality ignoring spans, indent unit and source name.
    pub fn same_content(&self, other: &PolicyFile) -> bool {
        self.strip_locations() == other.strip_locations()
    }

    /// Every extension action in the document with the span of its rule.
    pub fn extension_actions(&self) -> Vec<(&Action, SourceSpan)> {
        let mut out = Vec::new();
        for block in &self.blocks {
            for path in &block.paths {
                for element in &path.elements {
                    for rule in &element.rules {
                        for action in rule.actions().actions() {
                            if action.is_extension() {
                                out.push((action, rule.span()));
                            }
                        }
                    }
                }
            }
        }
        out
    }
}
