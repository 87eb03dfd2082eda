//! Plain-text logs and a minimal XES reader.
//!
//! The text format has one trace per line with events separated by spaces.
//! Repeated lines add to the multiplicity, an empty line is the empty trace
//! and lines starting with `#` are comments.

use quick_xml::events::{BytesStart, Event};
use quick_xml::Reader;

use crate::label::{Label, CHI_NAME};
use crate::logs::{EventLog, Trace};

use super::FormatError;

pub fn read_log(text: &str) -> Result<EventLog, FormatError> {
    let mut traces = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.strip_suffix('\r').unwrap_or(raw);
        if line.starts_with('#') {
            continue;
        }
        let mut events = Vec::new();
        for name in line.split_whitespace() {
            if name == CHI_NAME {
                return Err(FormatError::ReservedLabel {
                    location: format!("line {}", i + 1),
                });
            }
            events.push(Label::intern(name));
        }
        traces.push(Trace::new(events).expect("interned names are never reserved"));
    }
    Ok(traces.into_iter().collect())
}

/// Each distinct trace is written once per occurrence. Labels that the text
/// format cannot carry (empty, containing whitespace, or a leading `#` on
/// the first event) are rejected.
pub fn write_log(log: &EventLog) -> Result<String, FormatError> {
    let mut out = String::new();
    for (trace, n) in log.iter() {
        for (pos, l) in trace.events().iter().enumerate() {
            let name = l.name();
            if name.is_empty() || name.chars().any(char::is_whitespace) || (pos == 0 && name.starts_with('#')) {
                return Err(FormatError::Invalid {
                    location: "log".to_owned(),
                    message: format!("label `{name}` cannot be written as a plain-text event"),
                });
            }
        }
        let line = trace.events().iter().map(|l| l.name()).collect::<Vec<_>>().join(" ");
        for _ in 0..n {
            out.push_str(&line);
            out.push('\n');
        }
    }
    Ok(out)
}

/// Reads `<trace>`/`<event>` elements, labelling each event with its
/// `concept:name` string attribute. Everything else is ignored.
pub fn read_xes(text: &str) -> Result<EventLog, FormatError> {
    let mut reader = Reader::from_str(text);
    let mut stack: Vec<Vec<u8>> = Vec::new();
    let mut traces = Vec::new();
    let mut current: Option<Vec<Label>> = None;
    let mut event_name: Option<Option<String>> = None;
    let mut seen_log = false;

    loop {
        let position = reader.buffer_position();
        let event = reader.read_event().map_err(|e| FormatError::Xml {
            position,
            message: e.to_string(),
        })?;
        match event {
            Event::Start(e) => {
                open(&e, &stack, &mut current, &mut event_name, &mut seen_log, traces.len())?;
                stack.push(e.local_name().as_ref().to_vec());
            }
            Event::Empty(e) => {
                open(&e, &stack, &mut current, &mut event_name, &mut seen_log, traces.len())?;
                close(e.local_name().as_ref(), &mut current, &mut event_name, &mut traces)?;
            }
            Event::End(e) => {
                let name = e.local_name().as_ref().to_vec();
                if stack.pop().as_deref() != Some(name.as_slice()) {
                    return Err(FormatError::Xml {
                        position,
                        message: "mismatched closing tag".to_owned(),
                    });
                }
                close(&name, &mut current, &mut event_name, &mut traces)?;
            }
            Event::Eof => break,
            _ => {}
        }
    }
    if !stack.is_empty() {
        return Err(FormatError::Xml {
            position: text.len() as u64,
            message: "unexpected end of document".to_owned(),
        });
    }
    if !seen_log {
        return Err(FormatError::Xml {
            position: 0,
            message: "no <log> element".to_owned(),
        });
    }
    Ok(traces.into_iter().collect())
}

fn attribute(e: &BytesStart<'_>, key: &[u8]) -> Result<Option<String>, FormatError> {
    for attr in e.attributes() {
        let attr = attr.map_err(|err| FormatError::Xml {
            position: 0,
            message: err.to_string(),
        })?;
        if attr.key.as_ref() == key {
            let value = attr.unescape_value().map_err(|err| FormatError::Xml {
                position: 0,
                message: err.to_string(),
            })?;
            return Ok(Some(value.into_owned()));
        }
    }
    Ok(None)
}

fn open(
    e: &BytesStart<'_>,
    stack: &[Vec<u8>],
    current: &mut Option<Vec<Label>>,
    event_name: &mut Option<Option<String>>,
    seen_log: &mut bool,
    trace_index: usize,
) -> Result<(), FormatError> {
    let parent = stack.last().map(Vec::as_slice);
    match e.local_name().as_ref() {
        b"log" => *seen_log = true,
        b"trace" if parent == Some(b"log") => *current = Some(Vec::new()),
        b"event" if parent == Some(b"trace") => *event_name = Some(None),
        b"string"
            if parent == Some(b"event")
                && event_name.is_some()
                && attribute(e, b"key")?.as_deref() == Some("concept:name") =>
        {
            let value = attribute(e, b"value")?.unwrap_or_default();
            if value == CHI_NAME {
                return Err(FormatError::ReservedLabel {
                    location: format!("trace {trace_index}"),
                });
            }
            *event_name = Some(Some(value));
        }
        _ => {}
    }
    Ok(())
}

fn close(
    name: &[u8],
    current: &mut Option<Vec<Label>>,
    event_name: &mut Option<Option<String>>,
    traces: &mut Vec<Trace>,
) -> Result<(), FormatError> {
    match name {
        b"event" => {
            if let (Some(events), Some(label)) = (current.as_mut(), event_name.take()) {
                let label = label.ok_or(FormatError::MissingConceptName {
                    trace: traces.len(),
                    event: events.len(),
                })?;
                events.push(Label::intern(&label));
            }
        }
        b"trace" => {
            if let Some(events) = current.take() {
                traces.push(Trace::new(events).expect("interned names are never reserved"));
            }
        }
        _ => {}
    }
    Ok(())
}
