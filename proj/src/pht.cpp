#include "phinfer/pht.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

namespace phinfer {
namespace {

std::vector<std::string_view> tokenize(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

bool parse_flag(std::string_view value, std::size_t line) {
  if (value == "yes") return true;
  if (value == "no") return false;
  throw FormatError(line, "flag value must be yes or no, got '" + std::string(value) + "'");
}

struct PendingRecord {
  std::size_t line;
  std::string a;
  std::string b;
};

}  // namespace

PhtDocument parse_pht(std::string_view text) {
  std::optional<HeapSketch> sketch;
  std::optional<Alphabet> alphabet;
  bool saw_header = false;
  bool saw_flags = false;
  bool numbered = false;
  bool labeled = false;
  bool linked = false;
  std::vector<PendingRecord> nums;
  std::vector<PendingRecord> slinks;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    const auto tok = tokenize(line);
    if (tok.empty()) continue;

    if (!saw_header) {
      if (tok.size() != 2 || tok[0] != "pht" || tok[1] != "1") throw FormatError(line_no, "expected 'pht 1'");
      saw_header = true;
      continue;
    }
    if (!saw_flags) {
      if (tok.size() != 4 || tok[0] != "flags") {
        throw FormatError(line_no, "expected 'flags numbered=.. labeled=.. links=..'");
      }
      bool seen[3] = {false, false, false};
      for (std::size_t i = 1; i < 4; ++i) {
        const auto eq = tok[i].find('=');
        if (eq == std::string_view::npos) throw FormatError(line_no, "malformed flag '" + std::string(tok[i]) + "'");
        const auto key = tok[i].substr(0, eq);
        const bool value = parse_flag(tok[i].substr(eq + 1), line_no);
        int slot = key == "numbered" ? 0 : key == "labeled" ? 1 : key == "links" ? 2 : -1;
        if (slot < 0 || seen[slot]) throw FormatError(line_no, "unknown or repeated flag '" + std::string(key) + "'");
        seen[slot] = true;
        (slot == 0 ? numbered : slot == 1 ? labeled : linked) = value;
      }
      saw_flags = true;
      continue;
    }

    const std::string_view kind = tok[0];
    auto expect = [&](std::size_t n) {
      if (tok.size() != n) throw FormatError(line_no, "'" + std::string(kind) + "' takes " + std::to_string(n - 1) + " fields");
    };
    if (kind == "alphabet") {
      expect(2);
      if (alphabet) throw FormatError(line_no, "repeated alphabet");
      try {
        alphabet.emplace(tok[1]);
      } catch (const std::invalid_argument& e) {
        throw FormatError(line_no, e.what());
      }
    } else if (kind == "root") {
      expect(2);
      if (sketch) throw FormatError(line_no, "repeated root");
      sketch.emplace(std::string(tok[1]));
    } else if (kind == "edge") {
      expect(4);
      if (!sketch) throw FormatError(line_no, "edge before root");
      const auto parent = sketch->find(tok[1]);
      if (!parent) throw FormatError(line_no, "undeclared parent '" + std::string(tok[1]) + "'");
      if (sketch->find(tok[2])) throw FormatError(line_no, "node '" + std::string(tok[2]) + "' declared twice");
      std::optional<char> label;
      if (tok[3] != "-") {
        if (tok[3].size() != 1 || !Alphabet::is_letter(tok[3][0])) {
          throw FormatError(line_no, "label must be a single letter or '-'");
        }
        label = tok[3][0];
      }
      if (labeled != label.has_value()) {
        throw FormatError(line_no, labeled ? "labeled=yes but edge has no label" : "labeled=no but edge has a label");
      }
      if (label && alphabet && !alphabet->contains(*label)) {
        throw FormatError(line_no, std::string("label '") + *label + "' is not in the alphabet");
      }
      sketch->add_child(*parent, std::string(tok[2]), label);
    } else if (kind == "num") {
      expect(3);
      if (!numbered) throw FormatError(line_no, "numbered=no but a num record is present");
      nums.push_back({line_no, std::string(tok[1]), std::string(tok[2])});
    } else if (kind == "slink") {
      expect(3);
      if (!linked) throw FormatError(line_no, "links=no but an slink record is present");
      slinks.push_back({line_no, std::string(tok[1]), std::string(tok[2])});
    } else {
      throw FormatError(line_no, "unknown record '" + std::string(kind) + "'");
    }
  }

  if (!saw_header) throw FormatError(0, "empty document");
  if (!saw_flags) throw FormatError(0, "missing flags line");
  if (!sketch) throw FormatError(0, "missing root record");

  auto node_of = [&](const std::string& id, std::size_t line) {
    const auto v = sketch->find(id);
    if (!v) throw FormatError(line, "unknown node '" + id + "'");
    return *v;
  };

  if (numbered) {
    constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
    std::vector<std::size_t> numbers(sketch->node_count(), kUnset);
    for (const auto& rec : nums) {
      const NodeId v = node_of(rec.a, rec.line);
      std::size_t k = 0;
      const auto [end, ec] = std::from_chars(rec.b.data(), rec.b.data() + rec.b.size(), k);
      if (ec != std::errc{} || end != rec.b.data() + rec.b.size()) {
        throw FormatError(rec.line, "bad number '" + rec.b + "'");
      }
      if (numbers[v] != kUnset) throw FormatError(rec.line, "node '" + rec.a + "' numbered twice");
      numbers[v] = k;
    }
    for (NodeId v = 0; v < numbers.size(); ++v) {
      if (numbers[v] == kUnset) throw FormatError(0, "node '" + sketch->id(v) + "' has no number");
    }
    try {
      sketch->set_numbers(std::move(numbers));
    } catch (const std::invalid_argument& e) {
      throw FormatError(0, e.what());
    }
  }

  if (linked) {
    SuffixLinkMap links(sketch->node_count());
    for (const auto& rec : slinks) {
      const NodeId from = node_of(rec.a, rec.line);
      if (links.defined(from)) throw FormatError(rec.line, "node '" + rec.a + "' has two links");
      links[from] = node_of(rec.b, rec.line);
    }
    sketch->set_links(std::move(links));
  }
  sketch->mark_labeled(labeled);
  return {std::move(*sketch), std::move(alphabet)};
}

PhtDocument read_pht_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_pht(buf.str());
}

std::string write_pht(const PhtDocument& doc) {
  const HeapSketch& s = doc.sketch;
  auto yn = [](bool b) { return b ? "yes" : "no"; };
  std::ostringstream out;
  out << "pht 1\n";
  out << "flags numbered=" << yn(s.numbered()) << " labeled=" << yn(s.labeled()) << " links=" << yn(s.has_links())
      << '\n';
  if (doc.alphabet) out << "alphabet " << doc.alphabet->letters() << '\n';
  out << "root " << s.id(HeapSketch::root()) << '\n';
  for (NodeId v = 1; v < s.node_count(); ++v) {
    out << "edge " << s.id(s.parent(v)) << ' ' << s.id(v) << ' ';
    if (s.labeled() && s.label(v)) {
      out << *s.label(v);
    } else {
      out << '-';
    }
    out << '\n';
  }
  if (s.numbered()) {
    for (NodeId v = 0; v < s.node_count(); ++v) out << "num " << s.id(v) << ' ' << s.number(v) << '\n';
  }
  if (s.has_links()) {
    for (NodeId v = 0; v < s.node_count(); ++v) {
      if (s.links().defined(v)) out << "slink " << s.id(v) << ' ' << s.id(s.links()[v]) << '\n';
    }
  }
  return out.str();
}

}  // namespace phinfer
