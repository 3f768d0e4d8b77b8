//! Toolchain for ai.txt, a robots.txt-style language for declaring how AI
//! agents may use a website's content.
//!
//! A document names agents, the paths they visit, the elements on those
//! paths, and which actions (Train, Summarize, ...) are disallowed or
//! allowed only with natural-language guidelines.
//!
//! - [`parser`] turns text into a [`PolicyFile`] and prints it back.
//! - [`validator`] runs semantic checks.
//! - [`xmlgen`] compiles to and decodes from XML.
//! - [`policy`] answers enforcement queries.
//! - [`promptgen`] renders rules as prompt text.
//! - [`fetch`] retrieves `/ai.txt` from a site, and [`cli`] ties it all together.

pub mod cli;
pub mod diagnostic;
pub mod fetch;
pub mod model;
pub mod parser;
pub mod policy;
pub mod promptgen;
pub mod selector;
pub mod validator;
pub mod xmlgen;

pub use diagnostic::{Diagnostic, Mode, Severity};
pub use model::{
    action_from_string, vocabulary, Action, ActionList, ActionName, AgentName, AgentSelector,
    DisallowRule, ElementBlock, FileType, GuideRule, Guideline, IndentUnit, LanguageTag, PathBlock,
    PolicyFile, Rule, SourceSpan, UserAgentBlock,
};
pub use parser::{parse, pretty_print, ParseResult};
pub use policy::{evaluate, Decision, DecisionKind, Query};
pub use validator::{validate, ValidationReport};
pub use xmlgen::{compile_xml, decode_xml, XmlDocument, XmlError};
