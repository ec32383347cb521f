//! Finite partial maps and partial magmas over the carrier `{1, ..., n}`,
//! together with the pointwise algebra of partial functions and the
//! compact text codes used for tables and maps.
//!
//! Elements are labelled from 1 in every piece of text this module reads or
//! writes. An undefined image or product is [`None`]; it is never encoded as
//! an element. Only the order-2 shorthand spells it `3`.

use std::cmp::Ordering;
use std::fmt;
use std::marker::PhantomData;
use std::ops::Deref;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest carrier order any constructor accepts.
pub const MAX_ORDER: usize = 64;

/// Largest arity of a point handled by [`PartialFunction`].
pub const MAX_ARITY: usize = 3;

/// A member of the carrier `{1, ..., n}`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Element(u8);

impl Element {
    /// The element with 1-based `label`, checked against `order`.
    pub fn from_label(label: usize, order: usize) -> Result<Self> {
        if label == 0 || label > order {
            return Err(Error::ElementOutOfRange { label, order });
        }
        Ok(Element((label - 1) as u8))
    }

    pub(crate) fn from_index(index: usize) -> Self {
        debug_assert!(index < MAX_ORDER);
        Element(index as u8)
    }

    /// Zero-based position in the carrier.
    pub fn index(self) -> usize {
        self.0 as usize
    }

    /// One-based label, as written in tables.
    pub fn label(self) -> usize {
        self.0 as usize + 1
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

/// All elements of a carrier of the given order, in increasing order.
pub fn elements(order: usize) -> impl Iterator<Item = Element> + Clone {
    (0..order).map(Element::from_index)
}

fn check_order(order: usize) -> Result<()> {
    if order == 0 || order > MAX_ORDER {
        Err(Error::InvalidOrder(order))
    } else {
        Ok(())
    }
}

/// Ordering key of a cell or image: defined values first, by label, then
/// undefined.
pub(crate) fn slot_key(slot: Option<Element>, order: usize) -> usize {
    slot.map_or(order, Element::index)
}

fn fmt_slot(slot: Option<Element>) -> String {
    match slot {
        Some(e) => e.to_string(),
        None => "undefined".to_owned(),
    }
}

/// Domain shape of a pointwise partial function: `arity` coordinates, each in
/// a carrier of size `order`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Shape {
    pub order: usize,
    pub arity: usize,
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "X^{} with |X| = {}", self.arity, self.order)
    }
}

/// A tuple of at most [`MAX_ARITY`] elements.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Point {
    coords: [Element; MAX_ARITY],
    arity: u8,
}

impl Point {
    pub fn new(coords: &[Element]) -> Self {
        assert!(coords.len() <= MAX_ARITY, "point arity above {MAX_ARITY}");
        let mut buf = [Element(0); MAX_ARITY];
        buf[..coords.len()].copy_from_slice(coords);
        Point {
            coords: buf,
            arity: coords.len() as u8,
        }
    }

    pub fn coords(&self) -> &[Element] {
        &self.coords[..self.arity as usize]
    }
}

impl Deref for Point {
    type Target = [Element];

    fn deref(&self) -> &[Element] {
        self.coords()
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.coords().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// Row-major iterator over every point of a [`Shape`].
#[derive(Clone, Debug)]
pub struct Points {
    order: usize,
    arity: usize,
    next: Option<[usize; MAX_ARITY]>,
}

impl Points {
    pub fn new(shape: Shape) -> Self {
        assert!(shape.arity <= MAX_ARITY, "point arity above {MAX_ARITY}");
        Points {
            order: shape.order,
            arity: shape.arity,
            next: (shape.order > 0).then_some([0; MAX_ARITY]),
        }
    }
}

impl Iterator for Points {
    type Item = Point;

    fn next(&mut self) -> Option<Point> {
        let current = self.next?;
        let mut coords = [Element(0); MAX_ARITY];
        for (slot, &i) in coords.iter_mut().zip(&current).take(self.arity) {
            *slot = Element::from_index(i);
        }
        let point = Point {
            coords,
            arity: self.arity as u8,
        };

        let mut succ = current;
        let mut pos = self.arity;
        self.next = loop {
            if pos == 0 {
                break None;
            }
            pos -= 1;
            succ[pos] += 1;
            if succ[pos] < self.order {
                break Some(succ);
            }
            succ[pos] = 0;
        };
        Some(point)
    }
}

/// A partial function from `X^arity` into some value set, known only through
/// pointwise evaluation.
pub trait PartialFunction {
    type Value: Copy + Eq + fmt::Debug;

    fn shape(&self) -> Shape;

    /// The value at `point`, or `None` where undefined.
    fn eval(&self, point: &Point) -> Option<Self::Value>;

    /// The points where the function is defined.
    fn domain(&self) -> Vec<Point> {
        Points::new(self.shape())
            .filter(|p| self.eval(p).is_some())
            .collect()
    }
}

/// A [`PartialFunction`] given by a closure.
pub struct Pointwise<F, V> {
    shape: Shape,
    f: F,
    _value: PhantomData<fn() -> V>,
}

impl<F, V> Pointwise<F, V>
where
    F: Fn(&Point) -> Option<V>,
{
    pub fn new(order: usize, arity: usize, f: F) -> Self {
        Pointwise {
            shape: Shape { order, arity },
            f,
            _value: PhantomData,
        }
    }
}

impl<F, V> PartialFunction for Pointwise<F, V>
where
    F: Fn(&Point) -> Option<V>,
    V: Copy + Eq + fmt::Debug,
{
    type Value = V;

    fn shape(&self) -> Shape {
        self.shape
    }

    fn eval(&self, point: &Point) -> Option<V> {
        (self.f)(point)
    }
}

/// A point where two partial functions fail a comparison.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Disagreement<V> {
    pub point: Point,
    pub left: Option<V>,
    pub right: Option<V>,
}

impl fmt::Display for Disagreement<Element> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "at {}: left {}, right {}",
            self.point,
            fmt_slot(self.left),
            fmt_slot(self.right)
        )
    }
}

fn check_shapes(left: Shape, right: Shape) -> Result<()> {
    if left == right {
        Ok(())
    } else {
        Err(Error::ShapeMismatch { left, right })
    }
}

/// First point where both sides are defined with different values.
pub fn first_partial_disagreement<F, G>(f: &F, g: &G) -> Result<Option<Disagreement<F::Value>>>
where
    F: PartialFunction,
    G: PartialFunction<Value = F::Value>,
{
    check_shapes(f.shape(), g.shape())?;
    Ok(Points::new(f.shape()).find_map(|point| {
        let left = f.eval(&point)?;
        let right = g.eval(&point)?;
        (left != right).then_some(Disagreement {
            point,
            left: Some(left),
            right: Some(right),
        })
    }))
}

/// First point where the domains or the values differ.
pub fn first_disagreement<F, G>(f: &F, g: &G) -> Result<Option<Disagreement<F::Value>>>
where
    F: PartialFunction,
    G: PartialFunction<Value = F::Value>,
{
    check_shapes(f.shape(), g.shape())?;
    Ok(Points::new(f.shape()).find_map(|point| {
        let left = f.eval(&point);
        let right = g.eval(&point);
        (left != right).then_some(Disagreement { point, left, right })
    }))
}

/// `f ≈ g`: the values agree wherever both are defined.
pub fn partially_equal<F, G>(f: &F, g: &G) -> Result<bool>
where
    F: PartialFunction,
    G: PartialFunction<Value = F::Value>,
{
    Ok(first_partial_disagreement(f, g)?.is_none())
}

/// Equality as partial functions: same domain, same values on it.
pub fn equal_as_partial_functions<F, G>(f: &F, g: &G) -> Result<bool>
where
    F: PartialFunction,
    G: PartialFunction<Value = F::Value>,
{
    Ok(first_disagreement(f, g)?.is_none())
}

/// A partial self-map of `{1, ..., n}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PartialMap {
    images: Vec<Option<Element>>,
}

impl PartialMap {
    pub fn new(images: Vec<Option<Element>>) -> Result<Self> {
        let order = images.len();
        check_order(order)?;
        if let Some(bad) = images.iter().flatten().find(|e| e.index() >= order) {
            return Err(Error::ElementOutOfRange {
                label: bad.label(),
                order,
            });
        }
        Ok(PartialMap { images })
    }

    /// Builds a map from 1-based labels, `None` meaning undefined.
    pub fn from_labels(labels: &[Option<usize>]) -> Result<Self> {
        let order = labels.len();
        check_order(order)?;
        let images = labels
            .iter()
            .map(|l| l.map(|l| Element::from_label(l, order)).transpose())
            .collect::<Result<_>>()?;
        Ok(PartialMap { images })
    }

    pub fn identity(order: usize) -> Result<Self> {
        check_order(order)?;
        Ok(PartialMap {
            images: elements(order).map(Some).collect(),
        })
    }

    /// The nowhere-defined map.
    pub fn empty(order: usize) -> Result<Self> {
        check_order(order)?;
        Ok(PartialMap {
            images: vec![None; order],
        })
    }

    /// Number of partial self-maps of a carrier of this order, `(n+1)^n`.
    pub fn count(order: usize) -> Option<u128> {
        u128::try_from(order + 1).ok()?.checked_pow(order as u32)
    }

    /// Every partial self-map, in the canonical [`Ord`] order.
    pub fn all(order: usize) -> Result<Vec<PartialMap>> {
        check_order(order)?;
        let total =
            PartialMap::count(order)
                .filter(|&c| c <= 1 << 24)
                .ok_or(Error::LimitExceeded {
                    what: "number of partial maps",
                    required: PartialMap::count(order).unwrap_or(u128::MAX),
                    limit: 1 << 24,
                })? as usize;
        let mut maps = Vec::with_capacity(total);
        let mut digits = vec![0usize; order];
        loop {
            maps.push(PartialMap {
                images: digits
                    .iter()
                    .map(|&d| (d < order).then(|| Element::from_index(d)))
                    .collect(),
            });
            let Some(pos) = digits.iter().rposition(|&d| d < order) else {
                break;
            };
            digits[pos] += 1;
            digits[pos + 1..].fill(0);
        }
        maps.sort();
        Ok(maps)
    }

    pub fn order(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[Option<Element>] {
        &self.images
    }

    pub fn apply(&self, x: Element) -> Option<Element> {
        self.images[x.index()]
    }

    /// [`apply`](Self::apply) lifted to an undefined argument.
    pub fn apply_opt(&self, x: Option<Element>) -> Option<Element> {
        x.and_then(|x| self.apply(x))
    }

    pub fn domain_elements(&self) -> Vec<Element> {
        elements(self.order())
            .filter(|&x| self.apply(x).is_some())
            .collect()
    }

    pub fn range(&self) -> Vec<Element> {
        let mut r: Vec<Element> = self.images.iter().flatten().copied().collect();
        r.sort();
        r.dedup();
        r
    }

    pub fn is_total(&self) -> bool {
        self.images.iter().all(Option::is_some)
    }

    /// Whether the restriction to the domain is injective.
    pub fn is_injective_on_domain(&self) -> bool {
        let defined = self.images.iter().flatten().count();
        self.range().len() == defined
    }

    /// Text code: `ab` over `{1,2,3}` for order 2, otherwise images joined
    /// by commas with `-` for undefined.
    pub fn code(&self) -> String {
        encode_slots(&self.images, self.order())
    }
}

impl Ord for PartialMap {
    /// Smaller domains first, then row-major with undefined after every
    /// element. For order 2 this lists `33, 13, 23, 31, 32, 11, 12, 21, 22`.
    fn cmp(&self, other: &Self) -> Ordering {
        let defined = |m: &PartialMap| m.images.iter().flatten().count();
        let n = self.order();
        defined(self)
            .cmp(&defined(other))
            .then_with(|| self.order().cmp(&other.order()))
            .then_with(|| {
                let a = self.images.iter().map(|&s| slot_key(s, n));
                let b = other.images.iter().map(|&s| slot_key(s, n));
                a.cmp(b)
            })
    }
}

impl PartialOrd for PartialMap {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for PartialMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PartialMap({})", self.code())
    }
}

impl fmt::Display for PartialMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.code())
    }
}

impl FromStr for PartialMap {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let slots = decode_slots(s, |len| (len == 2).then_some(2), Some)?;
        Ok(PartialMap { images: slots.1 })
    }
}

impl Serialize for PartialMap {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.code())
    }
}

impl PartialFunction for PartialMap {
    type Value = Element;

    fn shape(&self) -> Shape {
        Shape {
            order: self.order(),
            arity: 1,
        }
    }

    fn eval(&self, point: &Point) -> Option<Element> {
        self.apply(point[0])
    }
}

/// `g ∘ f`: defined at `x` iff `f(x)` and `g(f(x))` are.
pub fn compose(g: &PartialMap, f: &PartialMap) -> Result<PartialMap> {
    Error::check_orders(g.order(), f.order())?;
    Ok(PartialMap {
        images: f.images.iter().map(|&y| g.apply_opt(y)).collect(),
    })
}

/// `f × h` on ordered pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairMap {
    first: PartialMap,
    second: PartialMap,
}

impl PartialFunction for PairMap {
    type Value = (Element, Element);

    fn shape(&self) -> Shape {
        Shape {
            order: self.first.order(),
            arity: 2,
        }
    }

    fn eval(&self, point: &Point) -> Option<(Element, Element)> {
        Some((self.first.apply(point[0])?, self.second.apply(point[1])?))
    }
}

pub fn pair_map(f: &PartialMap, h: &PartialMap) -> Result<PairMap> {
    Error::check_orders(f.order(), h.order())?;
    Ok(PairMap {
        first: f.clone(),
        second: h.clone(),
    })
}

/// A partial binary operation on `{1, ..., n}`, stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PartialMagma {
    order: usize,
    cells: Vec<Option<Element>>,
}

impl PartialMagma {
    pub fn new(order: usize, cells: Vec<Option<Element>>) -> Result<Self> {
        check_order(order)?;
        if cells.len() != order * order {
            return Err(Error::InvalidCode {
                code: format!("{} cells", cells.len()),
                reason: format!("an order-{order} table has {} cells", order * order),
            });
        }
        if let Some(bad) = cells.iter().flatten().find(|e| e.index() >= order) {
            return Err(Error::ElementOutOfRange {
                label: bad.label(),
                order,
            });
        }
        Ok(PartialMagma { order, cells })
    }

    pub fn from_fn(order: usize, f: impl Fn(Element, Element) -> Option<Element>) -> Result<Self> {
        check_order(order)?;
        let cells = elements(order)
            .flat_map(|x| elements(order).map(move |y| (x, y)))
            .map(|(x, y)| f(x, y))
            .collect();
        PartialMagma::new(order, cells)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn cells(&self) -> &[Option<Element>] {
        &self.cells
    }

    pub fn product(&self, x: Element, y: Element) -> Option<Element> {
        self.cells[x.index() * self.order + y.index()]
    }

    /// [`product`](Self::product) lifted to undefined factors.
    pub fn product_opt(&self, x: Option<Element>, y: Option<Element>) -> Option<Element> {
        self.product(x?, y?)
    }

    pub fn is_total(&self) -> bool {
        self.cells.iter().all(Option::is_some)
    }

    pub fn defined_cells(&self) -> usize {
        self.cells.iter().flatten().count()
    }

    pub fn code(&self) -> TableCode {
        TableCode(encode_slots(&self.cells, self.order))
    }
}

impl Ord for PartialMagma {
    /// Row-major, defined values `1 < 2 < ... < n` before undefined.
    fn cmp(&self, other: &Self) -> Ordering {
        self.order.cmp(&other.order).then_with(|| {
            let a = self.cells.iter().map(|&c| slot_key(c, self.order));
            let b = other.cells.iter().map(|&c| slot_key(c, other.order));
            a.cmp(b)
        })
    }
}

impl PartialOrd for PartialMagma {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for PartialMagma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PartialMagma({})", self.code())
    }
}

impl fmt::Display for PartialMagma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code().as_str())
    }
}

impl FromStr for PartialMagma {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        decode(s)
    }
}

impl Serialize for PartialMagma {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.code().as_str())
    }
}

impl PartialFunction for PartialMagma {
    type Value = Element;

    fn shape(&self) -> Shape {
        Shape {
            order: self.order,
            arity: 2,
        }
    }

    fn eval(&self, point: &Point) -> Option<Element> {
        self.product(point[0], point[1])
    }
}

/// Row-major text form of a [`PartialMagma`].
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TableCode(String);

impl TableCode {
    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn decode(&self) -> Result<PartialMagma> {
        decode(&self.0)
    }
}

impl fmt::Display for TableCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl FromStr for TableCode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        decode(s)?;
        Ok(TableCode(s.to_owned()))
    }
}

pub fn encode(m: &PartialMagma) -> TableCode {
    m.code()
}

/// Parses either the order-2 shorthand (`2131`) or the comma form
/// (`1,-,2,3,1,1,2,-,3`).
pub fn decode(code: &str) -> Result<PartialMagma> {
    let isqrt = |count: usize| (1..=MAX_ORDER).find(|n| n * n == count);
    let (order, cells) = decode_slots(code, |len| (len == 4).then_some(2), isqrt)?;
    PartialMagma::new(order, cells)
}

fn encode_slots(slots: &[Option<Element>], order: usize) -> String {
    if order == 2 {
        slots
            .iter()
            .map(|s| match s {
                Some(e) => char::from(b'0' + e.label() as u8),
                None => '3',
            })
            .collect()
    } else {
        slots
            .iter()
            .map(|s| s.map_or_else(|| "-".to_owned(), |e| e.to_string()))
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// Shared decoder for map and table codes. `shorthand_order` recognises the
/// length of an order-2 shorthand code; `order_of_fields` turns the number
/// of comma-separated fields into the carrier order.
fn decode_slots(
    code: &str,
    shorthand_order: impl Fn(usize) -> Option<usize>,
    order_of_fields: impl Fn(usize) -> Option<usize>,
) -> Result<(usize, Vec<Option<Element>>)> {
    if code.is_empty() {
        return Err(Error::invalid_code(code, "empty code"));
    }
    if !code.contains(',') {
        if let Some(order) = shorthand_order(code.chars().count()) {
            let slots = code
                .chars()
                .map(|c| match c {
                    '1' | '2' => Ok(Some(Element::from_index(c as usize - '1' as usize))),
                    '3' => Ok(None),
                    other => Err(Error::invalid_code(
                        code,
                        format!("symbol {other:?} is not one of 1, 2, 3"),
                    )),
                })
                .collect::<Result<_>>()?;
            return Ok((order, slots));
        }
    }
    let fields: Vec<&str> = code.split(',').map(str::trim).collect();
    let order = order_of_fields(fields.len()).ok_or_else(|| {
        Error::invalid_code(
            code,
            format!("{} fields is not a valid length", fields.len()),
        )
    })?;
    check_order(order)?;
    let slots = fields
        .iter()
        .map(|f| match *f {
            "-" => Ok(None),
            label => {
                let value: usize = label.parse().map_err(|_| {
                    Error::invalid_code(code, format!("symbol {label:?} is not a label or '-'"))
                })?;
                Element::from_label(value, order).map(Some).map_err(|_| {
                    Error::invalid_code(code, format!("label {value} is outside 1..={order}"))
                })
            }
        })
        .collect::<Result<_>>()?;
    Ok((order, slots))
}
