#include "nabas/config.hpp"

#include <fstream>
#include <sstream>

#include "nabas/error.hpp"

namespace nabas {

namespace {

[[noreturn]] void parse_fail(int line, const std::string& msg) { fail(ErrorCode::Parse, "line " + std::to_string(line) + ": " + msg); }

long parse_int(const std::string& tok, int line) {
  try {
    std::size_t used = 0;
    long v = std::stol(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    parse_fail(line, "expected an integer, got '" + tok + "'");
  }
}

}  // namespace

Config parse_config(std::string_view text) {
  Config c;
  bool have_field = false, have_surface = false, have_dim = false;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream ls(raw);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    const std::string& key = tok[0];
    auto need = [&](std::size_t n) {
      if (tok.size() != n) parse_fail(line, "'" + key + "' takes " + std::to_string(n - 1) + " argument(s)");
    };
    try {
      if (key == "field") {
        need(3);
        long p = parse_int(tok[2], line);
        if (tok[1] == "qp")
          c.model = FieldModel::qp(p);
        else if (tok[1] == "laurent")
          c.model = FieldModel::laurent(p);
        else
          parse_fail(line, "unknown field kind '" + tok[1] + "'");
        have_field = true;
      } else if (key == "dim") {
        need(2);
        c.dim = static_cast<int>(parse_int(tok[1], line));
        if (c.dim < 2) parse_fail(line, "dim must be at least 2");
        have_dim = true;
      } else if (key == "surface") {
        need(3);
        c.surface = {static_cast<int>(parse_int(tok[1], line)), static_cast<int>(parse_int(tok[2], line))};
        validate_surface(c.surface);
        have_surface = true;
      } else if (key == "gen") {
        if (!have_field || !have_surface || !have_dim) parse_fail(line, "'gen' must follow 'field', 'dim' and 'surface'");
        need(static_cast<std::size_t>(2 + c.dim * c.dim));
        char expect = static_cast<char>('a' + c.gens.size());
        if (tok[1].size() != 1 || tok[1][0] != expect) parse_fail(line, std::string("expected generator '") + expect + "'");
        if (static_cast<int>(c.gens.size()) >= c.surface.rank()) parse_fail(line, "more generators than the rank");
        std::vector<FieldElement> entries;
        for (std::size_t i = 2; i < tok.size(); ++i) entries.push_back(FieldElement::parse(c.model, tok[i]));
        c.gens.push_back(std::move(entries));
      } else if (key == "boundary") {
        if (!have_surface) parse_fail(line, "'boundary' must follow 'surface'");
        need(3);
        long j = parse_int(tok[1], line);
        if (j < 1 || j > c.surface.boundaries) parse_fail(line, "boundary index out of range");
        c.boundary_overrides[static_cast<int>(j - 1)] = Word::parse(tok[2], c.surface.rank());
      } else if (key == "invert") {
        if (!have_surface) parse_fail(line, "'invert' must follow 'surface'");
        need(2);
        long j = parse_int(tok[1], line);
        if (j < 1 || j > c.surface.boundaries) parse_fail(line, "boundary index out of range");
        c.inverted.insert(static_cast<int>(j - 1));
      } else if (key == "cutoff") {
        need(2);
        c.cutoff = static_cast<int>(parse_int(tok[1], line));
      } else if (key == "window") {
        need(2);
        c.window = static_cast<int>(parse_int(tok[1], line));
        if (c.window < 0) parse_fail(line, "window must be nonnegative");
      } else {
        parse_fail(line, "unknown directive '" + key + "'");
      }
    } catch (const Error& e) {
      if (e.code() == ErrorCode::Parse && e.detail().rfind("line ", 0) == 0) throw;
      fail(e.code() == ErrorCode::BadSurface || e.code() == ErrorCode::BadLetter ? e.code() : ErrorCode::Parse,
           "line " + std::to_string(line) + ": " + e.detail());
    }
  }
  if (!have_field) parse_fail(line, "missing 'field'");
  if (!have_surface) parse_fail(line, "missing 'surface'");
  if (static_cast<int>(c.gens.size()) != c.surface.rank())
    parse_fail(line, "expected " + std::to_string(c.surface.rank()) + " 'gen' lines, found " + std::to_string(c.gens.size()));
  return c;
}

Config load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) fail(ErrorCode::Parse, "cannot read " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str());
}

std::string print_config(const Config& c) {
  std::ostringstream os;
  os << "field " << (c.model.kind() == FieldKind::QP ? "qp " : "laurent ") << c.model.p() << "\n";
  os << "dim " << c.dim << "\n";
  os << "surface " << c.surface.genus << " " << c.surface.boundaries << "\n";
  for (std::size_t g = 0; g < c.gens.size(); ++g) {
    os << "gen " << static_cast<char>('a' + g);
    for (const FieldElement& e : c.gens[g]) os << " " << e.to_string();
    os << "\n";
  }
  for (const auto& [j, w] : c.boundary_overrides) os << "boundary " << j + 1 << " " << w.to_string() << "\n";
  for (int j : c.inverted) os << "invert " << j + 1 << "\n";
  os << "cutoff " << c.cutoff << "\n";
  os << "window " << c.window << "\n";
  return os.str();
}

bool Config::operator==(const Config& o) const {
  if (!(model == o.model) || dim != o.dim || !(surface == o.surface) || boundary_overrides != o.boundary_overrides ||
      inverted != o.inverted || cutoff != o.cutoff || window != o.window || gens.size() != o.gens.size())
    return false;
  for (std::size_t g = 0; g < gens.size(); ++g) {
    if (gens[g].size() != o.gens[g].size()) return false;
    for (std::size_t i = 0; i < gens[g].size(); ++i)
      if (!gens[g][i].exact_equal(o.gens[g][i])) return false;
  }
  return true;
}

Representation Config::representation() const {
  std::vector<ProjMatrix> images;
  for (const auto& e : gens) images.emplace_back(model, dim, e);
  BoundarySystem sys = boundary_words(surface);
  for (const auto& [j, w] : boundary_overrides) sys.words.at(static_cast<std::size_t>(j)) = w;
  Representation rep(model, dim, surface, std::move(images), sys);
  for (int j : inverted) rep.set_inverted(j, true);
  rep.cutoff = cutoff;
  rep.window = window;
  return rep;
}

std::vector<std::string> preset_names() { return {"ex51", "ex52", "veronese3"}; }

namespace {

std::vector<FieldElement> ints(const FieldModel& m, std::initializer_list<long> xs) {
  std::vector<FieldElement> out;
  for (long x : xs) out.push_back(FieldElement::integer(m, x));
  return out;
}

}  // namespace

Config preset(std::string_view name) {
  Config c;
  if (name == "ex51" || name == "veronese3") {
    c.model = FieldModel::qp(3);
    // a: z -> 3z; b: z -> (z-4)/(2z-5), fixing 1 and 2.
    c.gens = {ints(c.model, {3, 0, 0, 1}), ints(c.model, {1, -4, 2, -5})};
    if (name == "veronese3") {
      c.dim = 3;
      for (auto& g : c.gens) g = veronese(ProjMatrix(c.model, 2, g), 3).entries();
    }
    return c;
  }
  if (name == "ex52") {
    c.model = FieldModel::qp(2);
    // a: z -> 2z; b fixes 1 and 3.
    c.gens = {ints(c.model, {2, 0, 0, 1}), ints(c.model, {5, -3, 1, 1})};
    return c;
  }
  fail(ErrorCode::InvalidArgument, "unknown preset '" + std::string(name) + "'");
}

}  // namespace nabas
