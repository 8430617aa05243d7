#include "sqcert/certificate.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <utility>

#include <json.hpp>

#include "sqcert/errors.hpp"

namespace sqcert {

namespace {

using ordered_json = nlohmann::ordered_json;
using json = nlohmann::json;

constexpr const char* kFormat = "sqcert";
constexpr int kFormatVersion = 1;

ordered_json constraint_to_json(const Constraint& c) {
  ordered_json j;
  if (const auto* sos = std::get_if<SumOfSquares>(&c)) {
    j["kind"] = "sum_of_squares";
    j["parts"] = {sos->a, sos->b, sos->c};
  } else {
    const auto& cp = std::get<Coprime>(c);
    j["kind"] = "coprime";
    j["factors"] = {cp.m, cp.n};
  }
  return j;
}

struct LineParser {
  std::size_t line;

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(line, what);
  }

  const json& field(const json& obj, const char* key) const {
    if (!obj.is_object()) fail("expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) fail(std::string("missing field '") + key + "'");
    return *it;
  }

  std::uint64_t uint(const json& v, const char* what) const {
    if (!v.is_number_unsigned()) {
      // nlohmann stores small non-negative literals as unsigned already.
      fail(std::string(what) + " must be a non-negative integer");
    }
    return v.get<std::uint64_t>();
  }

  std::uint64_t uint_field(const json& obj, const char* key) const {
    return uint(field(obj, key), key);
  }

  std::vector<std::uint64_t> uint_array(const json& obj, const char* key,
                                        std::size_t expected) const {
    const json& arr = field(obj, key);
    if (!arr.is_array()) fail(std::string(key) + " must be an array");
    if (expected != 0 && arr.size() != expected) {
      fail(std::string(key) + " must have " + std::to_string(expected) +
           " entries");
    }
    std::vector<std::uint64_t> out;
    for (const auto& v : arr) out.push_back(uint(v, key));
    return out;
  }

  Rational rational(const json& v) const {
    if (!v.is_string()) fail("rational must be a \"p/q\" string");
    Rational r;
    if (!Rational::parse_canonical(v.get<std::string>(), r)) {
      fail("rational '" + v.get<std::string>() + "' is not canonical p/q");
    }
    return r;
  }

  Constraint constraint(const json& obj) const {
    const json& kind = field(obj, "kind");
    if (kind == "sum_of_squares") {
      const auto p = uint_array(obj, "parts", 3);
      SumOfSquares sos{p[0], p[1], p[2], 0};
      std::uint64_t total = 0;
      bool overflow = false;
      for (std::uint64_t x : p) {
        std::uint64_t sq = 0;
        overflow = overflow || __builtin_mul_overflow(x, x, &sq) ||
                   __builtin_add_overflow(total, sq, &total);
      }
      sos.s = overflow ? 0 : total;
      return sos;
    }
    if (kind == "coprime") {
      const auto f = uint_array(obj, "factors", 2);
      return Coprime{f[0], f[1]};
    }
    fail("unknown constraint kind");
  }
};

}  // namespace

std::string kind_name(const StepKind& kind) {
  switch (kind.index()) {
    case 0: return "axiom";
    case 1: return "functional_equation";
    case 2: return "multiplicativity";
    case 3: return "division";
    case 4: return "root_set";
    default: return "intersection";
  }
}

std::string engine_version() { return std::string("sqcert ") + SQCERT_VERSION; }

std::vector<std::string> canonical_flags() {
  return {"lex-least-representation", "branch-order-ABCD",
          "smallest-divisor-first", "earliest-reference"};
}

StepRef CertificateBuilder::append(DerivationStep step) {
  step.index = steps_.size();
  steps_.push_back(std::move(step));
  return steps_.size() - 1;
}

StepRef CertificateBuilder::record(const Inference& inference) {
  DerivationStep step;
  step.target = inference.target;
  step.value = inference.value;
  if (inference.kind == Inference::Kind::Multiplicativity) {
    step.kind = MultiplicativityStep{inference.first, inference.second};
  } else {
    step.kind = DivisionStep{inference.first, inference.second};
  }
  step.refs = {inference.first_ref, inference.second_ref};
  return append(std::move(step));
}

PartialFn::Sink CertificateBuilder::sink() {
  return [this](const Inference& inference) { return record(inference); };
}

Certificate CertificateBuilder::finish(std::uint64_t bound) && {
  return Certificate{{bound, engine_version(), canonical_flags()},
                     std::move(steps_)};
}

std::string serialize_step(const DerivationStep& step) {
  ordered_json j;
  j["index"] = step.index;
  j["target"] = step.target;
  j["kind"] = kind_name(step.kind);
  j["value"] = step.value ? ordered_json(step.value->to_string())
                          : ordered_json(nullptr);
  std::visit(
      [&j](const auto& k) {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, FunctionalEquationStep>) {
          j["parts"] = {k.a, k.b, k.c};
        } else if constexpr (std::is_same_v<T, MultiplicativityStep>) {
          j["factors"] = {k.m, k.n};
        } else if constexpr (std::is_same_v<T, DivisionStep>) {
          j["dividend"] = k.dividend;
          j["divisor"] = k.divisor;
        } else if constexpr (std::is_same_v<T, RootSetStep>) {
          ordered_json chain = ordered_json::array();
          for (const auto& c : k.chain) chain.push_back(constraint_to_json(c));
          j["chain"] = std::move(chain);
          ordered_json roots = ordered_json::array();
          for (const auto& r : k.roots) roots.push_back(r.to_string());
          j["roots"] = std::move(roots);
        }
      },
      step.kind);
  j["refs"] = step.refs;
  return j.dump();
}

std::string serialize(const Certificate& cert) {
  std::string out;
  ordered_json header;
  header["format"] = kFormat;
  header["version"] = kFormatVersion;
  header["bound"] = cert.header.bound;
  header["engine"] = cert.header.engine;
  header["flags"] = cert.header.flags;
  out += header.dump();
  out += '\n';
  for (const auto& step : cert.steps) {
    out += serialize_step(step);
    out += '\n';
  }
  return out;
}

Certificate deserialize(std::string_view text) {
  Certificate cert;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  bool have_header = false;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    LineParser p{line_no};
    if (line.empty()) {
      if (pos >= text.size()) break;
      p.fail("empty line");
    }
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      p.fail(std::string("invalid JSON: ") + e.what());
    }
    if (!have_header) {
      if (p.field(j, "format") != kFormat) p.fail("not an sqcert file");
      if (p.field(j, "version") != kFormatVersion) {
        p.fail("unsupported format version");
      }
      cert.header.bound = p.uint_field(j, "bound");
      const json& engine = p.field(j, "engine");
      if (!engine.is_string()) p.fail("engine must be a string");
      cert.header.engine = engine.get<std::string>();
      const json& flags = p.field(j, "flags");
      if (!flags.is_array()) p.fail("flags must be an array");
      for (const auto& f : flags) {
        if (!f.is_string()) p.fail("flags must be strings");
        cert.header.flags.push_back(f.get<std::string>());
      }
      have_header = true;
      continue;
    }
    DerivationStep step;
    step.index = p.uint_field(j, "index");
    step.target = p.uint_field(j, "target");
    const json& value = p.field(j, "value");
    if (!value.is_null()) step.value = p.rational(value);
    const json& kind = p.field(j, "kind");
    if (kind == "axiom") {
      step.kind = AxiomStep{};
    } else if (kind == "functional_equation") {
      const auto parts = p.uint_array(j, "parts", 3);
      step.kind = FunctionalEquationStep{parts[0], parts[1], parts[2]};
    } else if (kind == "multiplicativity") {
      const auto f = p.uint_array(j, "factors", 2);
      step.kind = MultiplicativityStep{f[0], f[1]};
    } else if (kind == "division") {
      step.kind = DivisionStep{p.uint_field(j, "dividend"),
                               p.uint_field(j, "divisor")};
    } else if (kind == "root_set") {
      RootSetStep rs;
      const json& chain = p.field(j, "chain");
      if (!chain.is_array()) p.fail("chain must be an array");
      for (const auto& c : chain) rs.chain.push_back(p.constraint(c));
      const json& roots = p.field(j, "roots");
      if (!roots.is_array()) p.fail("roots must be an array");
      for (const auto& r : roots) rs.roots.push_back(p.rational(r));
      step.kind = std::move(rs);
    } else if (kind == "intersection") {
      step.kind = IntersectionStep{};
    } else {
      p.fail("unknown step kind");
    }
    step.refs = p.uint_array(j, "refs", 0);
    cert.steps.push_back(std::move(step));
  }
  if (!have_header) throw ParseError(line_no + 1, "missing header line");
  return cert;
}

void write_certificate(const std::string& path, const Certificate& cert) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << serialize(cert);
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

Certificate read_certificate(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return deserialize(buf.str());
}

CheckReport check_text(std::string_view text) {
  try {
    return check(deserialize(text));
  } catch (const ParseError& e) {
    CheckReport report;
    report.reason = std::string("parse error: ") + e.what();
    return report;
  }
}

}  // namespace sqcert
