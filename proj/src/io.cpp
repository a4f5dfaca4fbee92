#include "engel/io.hpp"

#include "json.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <sstream>

namespace engel {

using nlohmann::json;

namespace {

BigInt json_integer(const json& v, const std::string& what) {
  if (v.is_number_integer()) return BigInt(v.get<long long>());
  if (v.is_number_unsigned()) return BigInt(v.get<unsigned long long>());
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    const std::size_t start = !s.empty() && s[0] == '-' ? 1 : 0;
    if (start == s.size() || s.find_first_not_of("0123456789", start) != std::string::npos)
      throw ParseError(what + ": '" + s + "' is not an integer");
    return BigInt(s);
  }
  throw ParseError(what + ": expected an integer");
}

json integer_json(const BigInt& v) {
  if (v >= 0 && v <= BigInt(INT64_MAX)) return json(static_cast<long long>(v));
  return json(v.str());
}

std::size_t parse_index(const std::string& s, std::size_t n, const std::string& what) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
    throw ParseError(what + ": bad index '" + s + "'");
  const auto k = std::stoul(s);
  if (k < 1 || k > n) throw ParseError(what + ": index " + s + " out of range");
  return k - 1;
}

std::string definition_text(const Definition& d) {
  switch (d.kind) {
    case DefinitionKind::kGenerator:
      return "gen";
    case DefinitionKind::kCommutator:
      return "comm " + std::to_string(d.a + 1) + " " + std::to_string(d.b + 1);
    case DefinitionKind::kPower:
      return "pow " + std::to_string(d.a + 1);
    default:
      return "none";
  }
}

Definition parse_definition(const std::string& text, std::size_t n) {
  std::istringstream in(text);
  std::string kind;
  in >> kind;
  auto index = [&]() {
    std::string s;
    if (!(in >> s)) throw ParseError("definition '" + text + "' is missing an index");
    return parse_index(s, n, "definition");
  };
  if (kind == "gen") return Definition::generator();
  if (kind == "none") return Definition{};
  if (kind == "comm") {
    const auto a = index();
    const auto b = index();
    return Definition::commutator(a, b);
  }
  if (kind == "pow") return Definition::power(index());
  throw ParseError("unknown definition '" + text + "'");
}

}  // namespace

PresentationData parse_presentation_data(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("presentation is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("presentation must be a JSON object");
  static const std::vector<std::string> known = {"label", "ngens", "orders", "powers", "conjugates",
                                                 "weights", "definitions", "lift", "variety"};
  for (const auto& [key, value] : doc.items())
    if (std::find(known.begin(), known.end(), key) == known.end()) throw ParseError("unknown field '" + key + "'");
  if (!doc.contains("ngens")) throw ParseError("missing field 'ngens'");
  const BigInt ng = json_integer(doc["ngens"], "ngens");
  if (ng < 0 || ng > 4096) throw ParseError("ngens out of range");
  const auto n = static_cast<std::size_t>(ng);
  auto d = PresentationData::with_gens(doc.value("label", std::string("unnamed")), n);
  if (doc.contains("orders")) {
    const auto& o = doc["orders"];
    if (!o.is_array() || o.size() != n) throw ParseError("orders must be an array of ngens entries");
    for (std::size_t i = 0; i < n; ++i) d.orders[i] = json_integer(o[i], "orders");
  } else if (n > 0) {
    throw ParseError("missing field 'orders'");
  }
  if (doc.contains("powers")) {
    const auto& pw = doc["powers"];
    if (!pw.is_object()) throw ParseError("powers must be an object");
    for (const auto& [key, value] : pw.items()) {
      const auto i = parse_index(key, n, "powers");
      if (!value.is_string()) throw ParseError("powers: word must be a string");
      d.powers[i] = parse_normal_word(value.get<std::string>(), n);
    }
  }
  if (doc.contains("conjugates")) {
    const auto& cj = doc["conjugates"];
    if (!cj.is_object()) throw ParseError("conjugates must be an object");
    for (const auto& [key, value] : cj.items()) {
      const auto caret = key.find('^');
      if (caret == std::string::npos) throw ParseError("conjugates: key '" + key + "' must look like j^i");
      const auto j = parse_index(key.substr(0, caret), n, "conjugates");
      const auto i = parse_index(key.substr(caret + 1), n, "conjugates");
      if (i >= j) throw ParseError("conjugates: key '" + key + "' needs i < j");
      if (!value.is_string()) throw ParseError("conjugates: word must be a string");
      ExpVec w = parse_normal_word(value.get<std::string>(), n);
      for (std::size_t k = 0; k <= i; ++k)
        if (w[k] != 0) throw ParseError("conjugates: tail of " + key + " mentions g" + std::to_string(k + 1));
      d.conjugates[i][j] = std::move(w);
    }
  }
  if (doc.contains("weights")) {
    const auto& w = doc["weights"];
    if (!w.is_array() || w.size() != n) throw ParseError("weights must have ngens entries");
    for (const auto& x : w) d.weights.push_back(static_cast<int>(json_integer(x, "weights")));
  }
  if (doc.contains("definitions")) {
    const auto& df = doc["definitions"];
    if (!df.is_array() || df.size() != n) throw ParseError("definitions must have ngens entries");
    for (const auto& x : df) {
      if (!x.is_string()) throw ParseError("definitions must be strings");
      d.definitions.push_back(parse_definition(x.get<std::string>(), n));
    }
  }
  if (doc.contains("lift")) {
    if (doc["lift"] != "modular") throw ParseError("lift must be \"modular\"");
    d.modular_lift = true;
  }
  if (doc.contains("variety")) {
    if (doc["variety"] != "relatively-free") throw ParseError("variety must be \"relatively-free\"");
    d.relatively_free = true;
  }
  return d;
}

PresentationPtr parse_presentation(const std::string& text) {
  return PcPresentation::create(parse_presentation_data(text));
}

PresentationPtr parse_presentation(const std::string& text, const PcPresentation::Options& options) {
  return PcPresentation::create(parse_presentation_data(text), options);
}

std::string emit_presentation(const PcPresentation& p) {
  const auto d = p.data();
  const std::size_t n = d.ngens;
  json doc = json::object();
  doc["label"] = d.label;
  doc["ngens"] = n;
  json orders = json::array();
  for (const auto& r : d.orders) orders.push_back(integer_json(r));
  doc["orders"] = orders;
  json powers = json::object();
  for (std::size_t i = 0; i < n; ++i)
    if (!d.powers[i].empty()) powers[std::to_string(i + 1)] = format_normal_word(d.powers[i]);
  doc["powers"] = powers;
  json conj = json::object();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (!d.conjugates[i][j].empty())
        conj[std::to_string(j + 1) + "^" + std::to_string(i + 1)] = format_normal_word(d.conjugates[i][j]);
  doc["conjugates"] = conj;
  if (!d.weights.empty()) doc["weights"] = d.weights;
  if (!d.definitions.empty()) {
    json defs = json::array();
    for (const auto& df : d.definitions) defs.push_back(definition_text(df));
    doc["definitions"] = defs;
  }
  if (d.modular_lift) doc["lift"] = "modular";
  if (d.relatively_free) doc["variety"] = "relatively-free";
  return doc.dump(2) + "\n";
}

// ---- binary encodings -----------------------------------------------------------

void put_u16(Bytes& out, std::uint32_t v) {
  if (v > 0xFFFF) throw InvalidArgument("value does not fit in 16 bits");
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v));
}

void put_u32(Bytes& out, std::uint32_t v) {
  for (int s = 24; s >= 0; s -= 8) out.push_back(static_cast<std::uint8_t>(v >> s));
}

void put_string(Bytes& out, const std::string& s) {
  put_u16(out, static_cast<std::uint32_t>(s.size()));
  out.insert(out.end(), s.begin(), s.end());
}

void put_bigint(Bytes& out, const BigInt& v) {
  out.push_back(v < 0 ? 1 : 0);
  Bytes mag;
  if (v != 0) boost::multiprecision::export_bits(v < 0 ? BigInt(-v) : v, std::back_inserter(mag), 8, true);
  put_u16(out, static_cast<std::uint32_t>(mag.size()));
  out.insert(out.end(), mag.begin(), mag.end());
}

std::uint16_t get_u16(const Bytes& in, std::size_t& off) {
  if (off + 2 > in.size()) throw ParseError("truncated input reading u16");
  const auto v = static_cast<std::uint16_t>((in[off] << 8) | in[off + 1]);
  off += 2;
  return v;
}

std::uint32_t get_u32(const Bytes& in, std::size_t& off) {
  if (off + 4 > in.size()) throw ParseError("truncated input reading u32");
  std::uint32_t v = 0;
  for (int k = 0; k < 4; ++k) v = (v << 8) | in[off + k];
  off += 4;
  return v;
}

std::string get_string(const Bytes& in, std::size_t& off) {
  const std::size_t len = get_u16(in, off);
  if (off + len > in.size()) throw ParseError("truncated string");
  std::string s(in.begin() + static_cast<long>(off), in.begin() + static_cast<long>(off + len));
  off += len;
  return s;
}

BigInt get_bigint(const Bytes& in, std::size_t& off) {
  if (off + 1 > in.size()) throw ParseError("truncated integer");
  const std::uint8_t sign = in[off++];
  if (sign > 1) throw ParseError("sign byte must be 0 or 1");
  const std::size_t len = get_u16(in, off);
  if (off + len > in.size()) throw ParseError("truncated integer magnitude");
  if (len > 0 && in[off] == 0) throw ParseError("non-canonical integer: leading zero byte");
  if (len == 0 && sign == 1) throw ParseError("non-canonical integer: negative zero");
  BigInt v = 0;
  if (len > 0) boost::multiprecision::import_bits(v, in.begin() + static_cast<long>(off),
                                                  in.begin() + static_cast<long>(off + len), 8, true);
  off += len;
  return sign ? BigInt(-v) : v;
}

void encode_element_into(Bytes& out, const ExpVec& v) {
  put_u16(out, static_cast<std::uint32_t>(v.size()));
  for (const auto& e : v) put_bigint(out, e);
}

Bytes encode_element(const GroupElement& x) {
  Bytes out;
  encode_element_into(out, x.exponents());
  return out;
}

ExpVec decode_exponents(const Bytes& bytes, std::size_t& off, std::size_t ngens) {
  const std::size_t n = get_u16(bytes, off);
  if (n != ngens) throw ParseError("element has " + std::to_string(n) + " exponents, expected " + std::to_string(ngens));
  ExpVec v(n);
  for (auto& e : v) e = get_bigint(bytes, off);
  return v;
}

GroupElement decode_element(const Bytes& bytes, const PresentationPtr& p) {
  std::size_t off = 0;
  ExpVec v = decode_exponents(bytes, off, p->ngens());
  if (off != bytes.size()) throw ParseError("trailing bytes after element");
  if (!p->is_normal(v)) throw ParseError("decoded exponents are not a normal form");
  return GroupElement(p, std::move(v));
}

std::string message_kind_name(MessageKind k) {
  switch (k) {
    case MessageKind::kHello:
      return "HELLO";
    case MessageKind::kPub:
      return "PUB";
    case MessageKind::kShare:
      return "SHARE";
    case MessageKind::kSig:
      return "SIG";
    case MessageKind::kKeyConfirm:
      return "KEYCONFIRM";
  }
  return "UNKNOWN";
}

Bytes encode_frame(const WireFrame& frame) {
  if (frame.payload.size() + 1 > WireFrame::kMaxFrame) throw InvalidArgument("frame exceeds 16 MiB");
  Bytes out;
  out.reserve(frame.payload.size() + 5);
  put_u32(out, static_cast<std::uint32_t>(frame.payload.size() + 1));
  out.push_back(static_cast<std::uint8_t>(frame.kind));
  out.insert(out.end(), frame.payload.begin(), frame.payload.end());
  return out;
}

std::optional<WireFrame> decode_frame(const Bytes& bytes, std::size_t& off) {
  if (off + 4 > bytes.size()) return std::nullopt;
  std::size_t pos = off;
  const std::uint32_t len = get_u32(bytes, pos);
  if (len == 0) throw ParseError("frame length 0 has no kind byte");
  if (len > WireFrame::kMaxFrame) throw ParseError("frame exceeds 16 MiB");
  if (pos + len > bytes.size()) return std::nullopt;
  const std::uint8_t kind = bytes[pos];
  if (kind < 1 || kind > 5) throw ParseError("unknown message kind " + std::to_string(kind));
  WireFrame f;
  f.kind = static_cast<MessageKind>(kind);
  f.payload.assign(bytes.begin() + static_cast<long>(pos + 1), bytes.begin() + static_cast<long>(pos + len));
  off = pos + len;
  return f;
}

std::string to_hex(const Bytes& b) {
  static const char* digits = "0123456789abcdef";
  std::string s;
  s.reserve(b.size() * 2);
  for (auto c : b) {
    s += digits[c >> 4];
    s += digits[c & 15];
  }
  return s;
}

Bytes digest(const std::string& algorithm, const Bytes& data) {
  const EVP_MD* md = EVP_get_digestbyname(algorithm.c_str());
  if (!md) throw InvalidArgument("unknown hash algorithm '" + algorithm + "'");
  Bytes out(EVP_MAX_MD_SIZE);
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), out.data(), &len, md, nullptr) != 1)
    throw Error("digest computation failed");
  out.resize(len);
  return out;
}

}  // namespace engel
