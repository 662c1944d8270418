//! Byte-stable JSON: object keys sorted, floats with 17 significant digits,
//! non-finite floats as the strings `"NaN"`, `"Infinity"`, `"-Infinity"`.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use serde::ser::{self, Serialize};

#[derive(Debug, Clone, PartialEq)]
pub enum Node {
    Null,
    Bool(bool),
    Int(i64),
    UInt(u64),
    Float(f64),
    Str(String),
    Seq(Vec<Node>),
    Map(BTreeMap<String, Node>),
}

impl Node {
    pub fn map() -> Node {
        Node::Map(BTreeMap::new())
    }

    /// Insert into a map node; panics on other variants.
    pub fn insert(&mut self, key: &str, value: impl Into<Node>) {
        match self {
            Node::Map(m) => {
                m.insert(key.to_string(), value.into());
            }
            _ => panic!("insert on a non-map node"),
        }
    }
}

impl From<f64> for Node {
    fn from(x: f64) -> Self {
        Node::Float(x)
    }
}

impl From<bool> for Node {
    fn from(b: bool) -> Self {
        Node::Bool(b)
    }
}

impl From<&str> for Node {
    fn from(s: &str) -> Self {
        Node::Str(s.to_string())
    }
}

impl From<String> for Node {
    fn from(s: String) -> Self {
        Node::Str(s)
    }
}

impl From<u32> for Node {
    fn from(x: u32) -> Self {
        Node::UInt(x as u64)
    }
}

impl From<usize> for Node {
    fn from(x: usize) -> Self {
        Node::UInt(x as u64)
    }
}

impl From<u64> for Node {
    fn from(x: u64) -> Self {
        Node::UInt(x)
    }
}

impl From<Vec<f64>> for Node {
    fn from(v: Vec<f64>) -> Self {
        Node::Seq(v.into_iter().map(Node::Float).collect())
    }
}

impl From<Vec<Node>> for Node {
    fn from(v: Vec<Node>) -> Self {
        Node::Seq(v)
    }
}

#[derive(Debug)]
pub struct SerError(String);

impl fmt::Display for SerError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for SerError {}

impl ser::Error for SerError {
    fn custom<T: fmt::Display>(msg: T) -> Self {
        SerError(msg.to_string())
    }
}

/// Convert any `Serialize` value into a [`Node`].
pub fn to_node<T: Serialize + ?Sized>(value: &T) -> Node {
    value.serialize(NodeSerializer).expect("serialisation into a tree cannot fail for plain data")
}

struct NodeSerializer;

pub struct SeqBuilder {
    items: Vec<Node>,
    /// Variant name for tuple variants (`{"Name": [...]}`).
    tag: Option<&'static str>,
}

pub struct MapBuilder {
    map: BTreeMap<String, Node>,
    key: Option<String>,
    tag: Option<&'static str>,
}

fn key_string(n: Node) -> Result<String, SerError> {
    match n {
        Node::Str(s) => Ok(s),
        Node::Int(i) => Ok(i.to_string()),
        Node::UInt(i) => Ok(i.to_string()),
        Node::Bool(b) => Ok(b.to_string()),
        Node::Float(x) => Ok(format_float(x)),
        other => Err(SerError(format!("unsupported map key {other:?}"))),
    }
}

fn wrap(tag: Option<&'static str>, inner: Node) -> Node {
    match tag {
        Some(t) => {
            let mut m = BTreeMap::new();
            m.insert(t.to_string(), inner);
            Node::Map(m)
        }
        None => inner,
    }
}

impl ser::Serializer for NodeSerializer {
    type Ok = Node;
    type Error = SerError;
    type SerializeSeq = SeqBuilder;
    type SerializeTuple = SeqBuilder;
    type SerializeTupleStruct = SeqBuilder;
    type SerializeTupleVariant = SeqBuilder;
    type SerializeMap = MapBuilder;
    type SerializeStruct = MapBuilder;
    type SerializeStructVariant = MapBuilder;

    fn serialize_bool(self, v: bool) -> Result<Node, SerError> {
        Ok(Node::Bool(v))
    }
    fn serialize_i8(self, v: i8) -> Result<Node, SerError> {
        Ok(Node::Int(v as i64))
    }
    fn serialize_i16(self, v: i16) -> Result<Node, SerError> {
        Ok(Node::Int(v as i64))
    }
    fn serialize_i32(self, v: i32) -> Result<Node, SerError> {
        Ok(Node::Int(v as i64))
    }
    fn serialize_i64(self, v: i64) -> Result<Node, SerError> {
        Ok(Node::Int(v))
    }
    fn serialize_u8(self, v: u8) -> Result<Node, SerError> {
        Ok(Node::UInt(v as u64))
    }
    fn serialize_u16(self, v: u16) -> Result<Node, SerError> {
        Ok(Node::UInt(v as u64))
    }
    fn serialize_u32(self, v: u32) -> Result<Node, SerError> {
        Ok(Node::UInt(v as u64))
    }
    fn serialize_u64(self, v: u64) -> Result<Node, SerError> {
        Ok(Node::UInt(v))
    }
    fn serialize_f32(self, v: f32) -> Result<Node, SerError> {
        Ok(Node::Float(v as f64))
    }
    fn serialize_f64(self, v: f64) -> Result<Node, SerError> {
        Ok(Node::Float(v))
    }
    fn serialize_char(self, v: char) -> Result<Node, SerError> {
        Ok(Node::Str(v.to_string()))
    }
    fn serialize_str(self, v: &str) -> Result<Node, SerError> {
        Ok(Node::Str(v.to_string()))
    }
    fn serialize_bytes(self, v: &[u8]) -> Result<Node, SerError> {
        Ok(Node::Seq(v.iter().map(|b| Node::UInt(*b as u64)).collect()))
    }
    fn serialize_none(self) -> Result<Node, SerError> {
        Ok(Node::Null)
    }
    fn serialize_some<T: Serialize + ?Sized>(self, value: &T) -> Result<Node, SerError> {
        value.serialize(self)
    }
    fn serialize_unit(self) -> Result<Node, SerError> {
        Ok(Node::Null)
    }
    fn serialize_unit_struct(self, _: &'static str) -> Result<Node, SerError> {
        Ok(Node::Null)
    }
    fn serialize_unit_variant(self, _: &'static str, _: u32, variant: &'static str) -> Result<Node, SerError> {
        Ok(Node::Str(variant.to_string()))
    }
    fn serialize_newtype_struct<T: Serialize + ?Sized>(self, _: &'static str, value: &T) -> Result<Node, SerError> {
        value.serialize(self)
    }
    fn serialize_newtype_variant<T: Serialize + ?Sized>(
        self,
        _: &'static str,
        _: u32,
        variant: &'static str,
        value: &T,
    ) -> Result<Node, SerError> {
        Ok(wrap(Some(variant), value.serialize(NodeSerializer)?))
    }
    fn serialize_seq(self, len: Option<usize>) -> Result<SeqBuilder, SerError> {
        Ok(SeqBuilder { items: Vec::with_capacity(len.unwrap_or(0)), tag: None })
    }
    fn serialize_tuple(self, len: usize) -> Result<SeqBuilder, SerError> {
        self.serialize_seq(Some(len))
    }
    fn serialize_tuple_struct(self, _: &'static str, len: usize) -> Result<SeqBuilder, SerError> {
        self.serialize_seq(Some(len))
    }
    fn serialize_tuple_variant(
        self,
        _: &'static str,
        _: u32,
        variant: &'static str,
        len: usize,
    ) -> Result<SeqBuilder, SerError> {
        Ok(SeqBuilder { items: Vec::with_capacity(len), tag: Some(variant) })
    }
    fn serialize_map(self, _: Option<usize>) -> Result<MapBuilder, SerError> {
        Ok(MapBuilder { map: BTreeMap::new(), key: None, tag: None })
    }
    fn serialize_struct(self, _: &'static str, _: usize) -> Result<MapBuilder, SerError> {
        self.serialize_map(None)
    }
    fn serialize_struct_variant(
        self,
        _: &'static str,
        _: u32,
        variant: &'static str,
        _: usize,
    ) -> Result<MapBuilder, SerError> {
        Ok(MapBuilder { map: BTreeMap::new(), key: None, tag: Some(variant) })
    }
}

impl ser::SerializeSeq for SeqBuilder {
    type Ok = Node;
    type Error = SerError;
    fn serialize_element<T: Serialize + ?Sized>(&mut self, value: &T) -> Result<(), SerError> {
        self.items.push(value.serialize(NodeSerializer)?);
        Ok(())
    }
    fn end(self) -> Result<Node, SerError> {
        Ok(wrap(self.tag, Node::Seq(self.items)))
    }
}

impl ser::SerializeTuple for SeqBuilder {
    type Ok = Node;
    type Error = SerError;
    fn serialize_element<T: Serialize + ?Sized>(&mut self, value: &T) -> Result<(), SerError> {
        ser::SerializeSeq::serialize_element(self, value)
    }
    fn end(self) -> Result<Node, SerError> {
        ser::SerializeSeq::end(self)
    }
}

impl ser::SerializeTupleStruct for SeqBuilder {
    type Ok = Node;
    type Error = SerError;
    fn serialize_field<T: Serialize + ?Sized>(&mut self, value: &T) -> Result<(), SerError> {
        ser::SerializeSeq::serialize_element(self, value)
    }
    fn end(self) -> Result<Node, SerError> {
        ser::SerializeSeq::end(self)
    }
}

impl ser::SerializeTupleVariant for SeqBuilder {
    type Ok = Node;
    type Error = SerError;
    fn serialize_field<T: Serialize + ?Sized>(&mut self, value: &T) -> Result<(), SerError> {
        ser::SerializeSeq::serialize_element(self, value)
    }
    fn end(self) -> Result<Node, SerError> {
        ser::SerializeSeq::end(self)
    }
}

impl ser::SerializeMap for MapBuilder {
    type Ok = Node;
    type Error = SerError;
    fn serialize_key<T: Serialize + ?Sized>(&mut self, key: &T) -> Result<(), SerError> {
        self.key = Some(key_string(key.serialize(NodeSerializer)?)?);
        Ok(())
    }
    fn serialize_value<T: Serialize + ?Sized>(&mut self, value: &T) -> Result<(), SerError> {
        let k = self.key.take().ok_or_else(|| SerError("value without key".into()))?;
        self.map.insert(k, value.serialize(NodeSerializer)?);
        Ok(())
    }
    fn end(self) -> Result<Node, SerError> {
        Ok(wrap(self.tag, Node::Map(self.map)))
    }
}

impl ser::SerializeStruct for MapBuilder {
    type Ok = Node;
    type Error = SerError;
    fn serialize_field<T: Serialize + ?Sized>(&mut self, key: &'static str, value: &T) -> Result<(), SerError> {
        self.map.insert(key.to_string(), value.serialize(NodeSerializer)?);
        Ok(())
    }
    fn end(self) -> Result<Node, SerError> {
        Ok(wrap(self.tag, Node::Map(self.map)))
    }
}

impl ser::SerializeStructVariant for MapBuilder {
    type Ok = Node;
    type Error = SerError;
    fn serialize_field<T: Serialize + ?Sized>(&mut self, key: &'static str, value: &T) -> Result<(), SerError> {
        ser::SerializeStruct::serialize_field(self, key, value)
    }
    fn end(self) -> Result<Node, SerError> {
        ser::SerializeStruct::end(self)
    }
}

/// `%.17g`, with `.0` appended to integral values so they stay floats.
pub fn format_float(x: f64) -> String {
    if x.is_nan() {
        return "NaN".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "Infinity".into() } else { "-Infinity".into() };
    }
    if x == 0.0 {
        return if x.is_sign_negative() { "-0.0".into() } else { "0.0".into() };
    }
    let sci = format!("{:.16e}", x);
    let (mant, exp) = sci.split_once('e').expect("exponent marker");
    let exp: i32 = exp.parse().expect("integer exponent");
    let neg = mant.starts_with('-');
    let digits: String = mant.chars().filter(|c| c.is_ascii_digit()).collect();
    let digits = digits.trim_end_matches('0');
    let digits = if digits.is_empty() { "0" } else { digits };
    let mut out = String::new();
    if neg {
        out.push('-');
    }
    if (-5..17).contains(&exp) {
        if exp < 0 {
            out.push_str("0.");
            for _ in 0..(-exp - 1) {
                out.push('0');
            }
            out.push_str(digits);
        } else {
            let point = exp as usize + 1;
            if digits.len() <= point {
                out.push_str(digits);
                for _ in digits.len()..point {
                    out.push('0');
                }
                out.push_str(".0");
            } else {
                out.push_str(&digits[..point]);
                out.push('.');
                out.push_str(&digits[point..]);
            }
        }
    } else {
        out.push_str(&digits[..1]);
        out.push('.');
        out.push_str(if digits.len() > 1 { &digits[1..] } else { "0" });
        let _ = write!(out, "e{exp}");
    }
    out
}

fn write_str(out: &mut String, s: &str) {
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => {
                let _ = write!(out, "\\u{:04x}", c as u32);
            }
            c => out.push(c),
        }
    }
    out.push('"');
}

fn write_node(out: &mut String, n: &Node, indent: usize) {
    let pad = |out: &mut String, k: usize| {
        for _ in 0..k {
            out.push_str("  ");
        }
    };
    match n {
        Node::Null => out.push_str("null"),
        Node::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Node::Int(i) => {
            let _ = write!(out, "{i}");
        }
        Node::UInt(i) => {
            let _ = write!(out, "{i}");
        }
        Node::Float(x) if x.is_finite() => out.push_str(&format_float(*x)),
        Node::Float(x) => write_str(out, &format_float(*x)),
        Node::Str(s) => write_str(out, s),
        Node::Seq(v) if v.is_empty() => out.push_str("[]"),
        Node::Seq(v) => {
            out.push_str("[\n");
            for (i, item) in v.iter().enumerate() {
                pad(out, indent + 1);
                write_node(out, item, indent + 1);
                if i + 1 < v.len() {
                    out.push(',');
                }
                out.push('\n');
            }
            pad(out, indent);
            out.push(']');
        }
        Node::Map(m) if m.is_empty() => out.push_str("{}"),
        Node::Map(m) => {
            out.push_str("{\n");
            for (i, (k, v)) in m.iter().enumerate() {
                pad(out, indent + 1);
                write_str(out, k);
                out.push_str(": ");
                write_node(out, v, indent + 1);
                if i + 1 < m.len() {
                    out.push(',');
                }
                out.push('\n');
            }
            pad(out, indent);
            out.push('}');
        }
    }
}

/// Pretty-printed, newline-terminated JSON text.
pub fn render(n: &Node) -> String {
    let mut out = String::new();
    write_node(&mut out, n, 0);
    out.push('\n');
    out
}
