#include "paf/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <iterator>
#include <ostream>

namespace paf {
namespace {

std::string describe(const std::string& source, std::size_t line, const std::string& message) {
  return line > 0 ? source + ":" + std::to_string(line) + ": " + message : source + ": " + message;
}

template <typename T>
bool parse_number(std::string_view text, T& value) {
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (first != last && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  return ec == std::errc() && ptr == last;
}

std::vector<std::string_view> split(std::string_view line, char separator) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (start <= line.size()) {
    const std::size_t end = line.find(separator, start);
    const std::size_t stop = end == std::string_view::npos ? line.size() : end;
    out.push_back(line.substr(start, stop - start));
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return out;
}

std::string_view trim(std::string_view s) {
  const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

// Line-oriented reader that skips blank lines and tracks line numbers.
class LineReader {
 public:
  LineReader(std::istream& in, std::string source) : in_(in), source_(std::move(source)) {}

  bool next() {
    while (std::getline(in_, line_)) {
      ++number_;
      if (!trim(line_).empty()) return true;
    }
    return false;
  }

  std::vector<std::string_view> fields() const { return tokens(line_); }
  std::size_t number() const { return number_; }

  [[noreturn]] void fail(const std::string& message) const { throw ParseError(source_, number_, message); }

  void require(const char* what) {
    if (!next()) throw ParseError(source_, number_, std::string("unexpected end of file, expected ") + what);
  }

  template <typename T>
  T number_at(const std::vector<std::string_view>& f, std::size_t i, const char* what) const {
    T value{};
    if (i >= f.size() || !parse_number(f[i], value)) fail(std::string("invalid ") + what);
    return value;
  }

 private:
  std::istream& in_;
  std::string source_;
  std::string line_;
  std::size_t number_ = 0;
};

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path.string(), 0, "cannot open file");
  return in;
}

Matrix parse_square_rows(LineReader& reader, Index size, const char* what) {
  Matrix m(size, size);
  for (Index r = 0; r < size; ++r) {
    reader.require(what);
    const auto f = reader.fields();
    if (static_cast<Index>(f.size()) != size) {
      reader.fail(std::string(what) + " row needs " + std::to_string(size) + " values, got " +
                  std::to_string(f.size()));
    }
    for (Index c = 0; c < size; ++c) {
      const double value = reader.number_at<double>(f, static_cast<std::size_t>(c), "matrix entry");
      if (!std::isfinite(value) || value < 0.0) reader.fail("matrix entries must be finite and >= 0");
      m(r, c) = value;
    }
  }
  return m;
}

// Whitespace/comment aware tokenizer for PGM headers.
struct PgmCursor {
  const std::string& data;
  std::size_t pos = 0;
  std::size_t line = 1;

  void skip_space() {
    while (pos < data.size()) {
      const char c = data[pos];
      if (c == '#') {
        while (pos < data.size() && data[pos] != '\n') ++pos;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        if (c == '\n') ++line;
        ++pos;
      } else {
        break;
      }
    }
  }

  std::string_view token() {
    skip_space();
    const std::size_t start = pos;
    while (pos < data.size() && !std::isspace(static_cast<unsigned char>(data[pos])) && data[pos] != '#') ++pos;
    return std::string_view(data).substr(start, pos - start);
  }
};

void put_pgm_header(std::ostream& out, Index width, Index height, unsigned maxval) {
  out << "P5\n" << width << ' ' << height << '\n' << maxval << '\n';
}

}  // namespace

ParseError::ParseError(std::string source, std::size_t line, const std::string& message)
    : std::runtime_error(describe(source, line, message)), source_(std::move(source)), line_(line) {}

std::string format_real(double value) {
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value, std::chars_format::general, 17);
  return std::string(buffer, result.ptr);
}

PatchDictionary parse_dictionary(std::istream& in, const std::string& source) {
  LineReader reader(in, source);
  reader.require("header");
  const auto header = reader.fields();
  if (header.size() != 5 || header[0] != "patchdict" || header[1] != "v1") {
    reader.fail("expected header 'patchdict v1 <k> <c> <|D|>'");
  }
  const auto side = reader.number_at<long>(header, 2, "patch side");
  const auto classes = reader.number_at<long>(header, 3, "class count");
  const auto count = reader.number_at<long>(header, 4, "template count");
  if (side < 1 || side % 2 == 0) reader.fail("patch side must be odd and >= 1");
  if (classes < 1) reader.fail("class count must be >= 1");
  if (count < 1) reader.fail("template count must be >= 1");

  std::vector<PatchTemplate> templates;
  templates.reserve(static_cast<std::size_t>(count));
  for (long d = 0; d < count; ++d) {
    reader.require("template line");
    const auto tag = reader.fields();
    if (tag.size() != 2 || tag[0] != "template") reader.fail("expected 'template <index>'");
    if (reader.number_at<long>(tag, 1, "template index") != d) {
      reader.fail("expected template index " + std::to_string(d));
    }
    std::vector<ClassId> cells;
    cells.reserve(static_cast<std::size_t>(side * side));
    for (long r = 0; r < side; ++r) {
      reader.require("template row");
      const auto row = reader.fields();
      if (static_cast<long>(row.size()) != side) {
        reader.fail("template row needs " + std::to_string(side) + " class ids, got " +
                    std::to_string(row.size()));
      }
      for (std::size_t s = 0; s < row.size(); ++s) {
        const auto c = reader.number_at<ClassId>(row, s, "class id");
        if (static_cast<long>(c) >= classes) {
          reader.fail("class id " + std::to_string(c) + " is not below class count " + std::to_string(classes));
        }
        cells.push_back(c);
      }
    }
    templates.emplace_back(side, std::move(cells));
  }
  if (reader.next()) reader.fail("trailing content after the last template");
  return PatchDictionary(std::move(templates), classes);
}

PatchDictionary read_dictionary(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_dictionary(in, path.string());
}

void write_dictionary(std::ostream& out, const PatchDictionary& dictionary) {
  out << "patchdict v1 " << dictionary.side() << ' ' << dictionary.class_count() << ' '
      << dictionary.size() << '\n';
  for (Index d = 0; d < dictionary.size(); ++d) {
    out << "template " << d << '\n';
    const PatchTemplate& t = dictionary[d];
    for (Index r = 0; r < t.side(); ++r) {
      for (Index s = 0; s < t.side(); ++s) out << (s ? " " : "") << t.at(r, s);
      out << '\n';
    }
  }
}

PatchAdjacency parse_omega(std::istream& in, const std::string& source) {
  LineReader reader(in, source);
  reader.require("header");
  const auto header = reader.fields();
  if (header.size() != 3 || header[0] != "omega" || header[1] != "v1") {
    reader.fail("expected header 'omega v1 <|D|>'");
  }
  const auto size = reader.number_at<long>(header, 2, "template count");
  if (size < 1) reader.fail("template count must be >= 1");
  PatchAdjacency adjacency;
  adjacency.omega_h = parse_square_rows(reader, size, "omega_h");
  adjacency.omega_v = parse_square_rows(reader, size, "omega_v");
  if (reader.next()) reader.fail("trailing content after omega_v");
  return adjacency;
}

PatchAdjacency read_omega(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_omega(in, path.string());
}

void write_omega(std::ostream& out, const PatchAdjacency& adjacency) {
  out << "omega v1 " << adjacency.size() << '\n';
  for (const Matrix* m : {&adjacency.omega_h, &adjacency.omega_v}) {
    for (Index r = 0; r < m->rows(); ++r) {
      for (Index c = 0; c < m->cols(); ++c) out << (c ? " " : "") << format_real((*m)(r, c));
      out << '\n';
    }
  }
}

void write_dictionary_graph(std::ostream& out, const DictionaryGraph& graph) {
  out << "dictgraph " << graph.vertex_count << '\n';
  for (Direction direction : {Direction::kHorizontal, Direction::kVertical}) {
    for (const auto& arc : graph.arcs) {
      if (arc.direction != direction) continue;
      out << (direction == Direction::kHorizontal ? 'h' : 'v') << ' ' << arc.from << ' ' << arc.to << ' '
          << format_real(arc.weight) << '\n';
    }
  }
}

LabelField parse_label_pgm(std::istream& in, const std::string& source, Index class_count) {
  const std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  PgmCursor cursor{data};
  const std::string_view magic = cursor.token();
  if (magic != "P2" && magic != "P5") throw ParseError(source, cursor.line, "expected PGM magic P2 or P5");
  long header[3] = {0, 0, 0};
  const char* names[3] = {"width", "height", "maxval"};
  for (int k = 0; k < 3; ++k) {
    if (!parse_number(cursor.token(), header[k]) || header[k] < 1) {
      throw ParseError(source, cursor.line, std::string("invalid PGM ") + names[k]);
    }
  }
  const long width = header[0];
  const long height = header[1];
  const long maxval = header[2];
  if (maxval > 65535) throw ParseError(source, cursor.line, "PGM maxval above 65535");

  std::vector<ClassId> labels;
  labels.reserve(static_cast<std::size_t>(width * height));
  const auto accept = [&](long value, std::size_t line) {
    if (value < 0 || value > maxval) throw ParseError(source, line, "gray level out of range");
    if (value >= class_count) {
      throw ParseError(source, line, "class id " + std::to_string(value) + " is not below class count " +
                                         std::to_string(class_count));
    }
    labels.push_back(static_cast<ClassId>(value));
  };
  if (magic == "P2") {
    for (long i = 0; i < width * height; ++i) {
      long value = 0;
      const std::string_view t = cursor.token();
      if (t.empty() || !parse_number(t, value)) throw ParseError(source, cursor.line, "invalid or missing gray level");
      accept(value, cursor.line);
    }
  } else {
    ++cursor.pos;  // single whitespace after maxval
    const std::size_t bytes = maxval < 256 ? 1 : 2;
    if (data.size() < cursor.pos + bytes * static_cast<std::size_t>(width * height)) {
      throw ParseError(source, 0, "truncated P5 raster");
    }
    for (long i = 0; i < width * height; ++i) {
      const auto* p = reinterpret_cast<const unsigned char*>(data.data() + cursor.pos + bytes * static_cast<std::size_t>(i));
      accept(bytes == 1 ? p[0] : (p[0] << 8) | p[1], 0);
    }
  }
  return LabelField(height, width, std::move(labels), class_count);
}

LabelField parse_label_csv(std::istream& in, const std::string& source, Index class_count) {
  std::vector<ClassId> labels;
  Index width = -1;
  Index height = 0;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (trim(line).empty()) continue;
    const auto cells = split(line, ',');
    if (width < 0) width = static_cast<Index>(cells.size());
    if (static_cast<Index>(cells.size()) != width) {
      throw ParseError(source, number, "row has " + std::to_string(cells.size()) + " values, expected " +
                                           std::to_string(width));
    }
    for (std::string_view cell : cells) {
      long value = 0;
      if (!parse_number(trim(cell), value) || value < 0) throw ParseError(source, number, "invalid class id");
      if (value >= class_count) {
        throw ParseError(source, number, "class id " + std::to_string(value) + " is not below class count " +
                                             std::to_string(class_count));
      }
      labels.push_back(static_cast<ClassId>(value));
    }
    ++height;
  }
  if (height == 0) throw ParseError(source, 0, "empty label file");
  return LabelField(height, width, std::move(labels), class_count);
}

LabelField read_label_field(const std::filesystem::path& path, Index class_count) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  if (ext != ".pgm" && ext != ".csv") {
    throw ParseError(path.string(), 0, "unsupported label file extension (use .pgm or .csv)");
  }
  auto in = open_input(path);
  return ext == ".pgm" ? parse_label_pgm(in, path.string(), class_count)
                       : parse_label_csv(in, path.string(), class_count);
}

void write_label_pgm(std::ostream& out, const LabelField& labels) {
  const auto maxval = static_cast<unsigned>(std::max<Index>(1, labels.class_count() - 1));
  put_pgm_header(out, labels.width(), labels.height(), maxval);
  for (ClassId c : labels.labels()) {
    if (maxval < 256) {
      out.put(static_cast<char>(c));
    } else {
      out.put(static_cast<char>(c >> 8));
      out.put(static_cast<char>(c & 0xff));
    }
  }
}

void write_label_csv(std::ostream& out, const LabelField& labels) {
  for (Index r = 0; r < labels.height(); ++r) {
    for (Index c = 0; c < labels.width(); ++c) out << (c ? "," : "") << labels.at(r, c);
    out << '\n';
  }
}

void write_uncertainty_pgm(std::ostream& out, const UncertaintyField& field) {
  put_pgm_header(out, field.width, field.height, 255);
  for (Index i = 0; i < field.normalized.rows(); ++i) {
    const double value = field.normalized.cols() == 1 ? field.normalized(i, 0) : field.normalized.row(i).maxCoeff();
    const long gray = std::lround(std::clamp(value, 0.0, 1.0) * 255.0);
    out.put(static_cast<char>(static_cast<unsigned char>(gray)));
  }
}

void write_uncertainty_csv(std::ostream& out, const UncertaintyField& field) {
  if (field.raw.cols() == 1) {
    for (Index r = 0; r < field.height; ++r) {
      for (Index c = 0; c < field.width; ++c) out << (c ? "," : "") << format_real(field.raw(r * field.width + c, 0));
      out << '\n';
    }
    return;
  }
  for (Index i = 0; i < field.raw.rows(); ++i) {
    for (Index k = 0; k < field.raw.cols(); ++k) out << (k ? "," : "") << format_real(field.raw(i, k));
    out << '\n';
  }
}

void write_trace_csv(std::ostream& out, const std::vector<TraceSample>& trace) {
  out << "step,time,objective,mean_entropy,mean_max_entry\n";
  for (const TraceSample& s : trace) {
    out << s.step << ',' << format_real(s.time) << ',' << format_real(s.objective) << ','
        << format_real(s.mean_entropy) << ',' << format_real(s.mean_max_entry) << '\n';
  }
}

}  // namespace paf
