#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "hextv/errors.hpp"
#include "hextv/hexmap.hpp"

namespace hextv {

namespace {

constexpr const char* kGridComment = "hextv-grid";

// Enough digits for decimals to read back as the same double.
constexpr int kDigits = std::numeric_limits<double>::max_digits10;

int bytes_per_label(int labels) { return labels <= 256 ? 1 : 2; }

void write_payload(std::ostream& out, std::span<const Label> values, int labels) {
  const int bytes = bytes_per_label(labels);
  std::string buffer;
  buffer.reserve(values.size() * bytes);
  for (Label v : values) {
    if (bytes == 2) buffer.push_back(static_cast<char>((v >> 8) & 0xff));
    buffer.push_back(static_cast<char>(v & 0xff));
  }
  out.write(buffer.data(), static_cast<std::streamsize>(buffer.size()));
}

std::vector<Label> read_payload(std::istream& in, std::size_t count, int labels) {
  const int bytes = bytes_per_label(labels);
  std::string buffer(count * bytes, '\0');
  in.read(buffer.data(), static_cast<std::streamsize>(buffer.size()));
  if (static_cast<std::size_t>(in.gcount()) != buffer.size()) throw IoError("truncated payload");
  std::vector<Label> values(count);
  for (std::size_t k = 0; k < count; ++k) {
    Label v = static_cast<unsigned char>(buffer[k * bytes]);
    if (bytes == 2) v = (v << 8) | static_cast<unsigned char>(buffer[k * bytes + 1]);
    if (v >= labels) throw IoError("label value out of range");
    values[k] = v;
  }
  return values;
}

// Skips whitespace and '#' comments; collects the text of our grid comment.
void skip_pnm_space(std::istream& in, std::string& grid_comment) {
  while (true) {
    const int ch = in.peek();
    if (ch == '#') {
      std::string line;
      std::getline(in, line);
      if (line.rfind(std::string("# ") + kGridComment, 0) == 0) grid_comment = line;
    } else if (ch == ' ' || ch == '\t' || ch == '\n' || ch == '\r') {
      in.get();
    } else {
      return;
    }
  }
}

int read_pnm_int(std::istream& in, std::string& grid_comment) {
  skip_pnm_space(in, grid_comment);
  long value = -1;
  if (!(in >> value) || value < 0 || value > (1 << 24)) throw IoError("malformed PGM header");
  return static_cast<int>(value);
}

void write_pgm(const DiscreteImage& img, std::ostream& out) {
  const Grid& grid = img.grid();
  const auto rows = grid.rows();
  const int width = rows.front().count();
  const int height = static_cast<int>(rows.size());
  for (const RowRange& r : rows) {
    if (r.count() != width) throw std::invalid_argument("write_image: ragged square grid");
  }
  if (img.labels() > 65536) throw std::invalid_argument("write_image: at most 65536 labels");
  const GridSpec& spec = grid.spec();
  out << "P5\n"
      << std::setprecision(kDigits) << "# " << kGridComment << ' ' << spec.d << ' ' << spec.width << ' '
      << spec.height << '\n'
      << width << ' ' << height << '\n'
      << img.labels() - 1 << '\n';
  write_payload(out, img.values(), img.labels());
}

DiscreteImage read_pgm(std::istream& in) {
  std::string grid_comment;
  const int width = read_pnm_int(in, grid_comment);
  const int height = read_pnm_int(in, grid_comment);
  const int maxval = read_pnm_int(in, grid_comment);
  if (maxval < 1 || maxval > 65535) throw IoError("PGM maxval out of range");
  if (in.get() == EOF) throw IoError("truncated PGM header");

  GridPtr grid;
  if (!grid_comment.empty()) {
    std::istringstream meta(grid_comment.substr(2 + std::string(kGridComment).size()));
    GridSpec spec{LatticeKind::Square, 0, 0, 0};
    if (!(meta >> spec.d >> spec.width >> spec.height)) throw IoError("malformed grid comment");
    try {
      grid = build_grid(spec);
    } catch (const std::invalid_argument& e) {
      throw IoError(std::string("invalid grid comment: ") + e.what());
    }
    if (static_cast<int>(grid->rows().size()) != height || grid->rows().front().count() != width) {
      throw IoError("grid comment does not match PGM dimensions");
    }
  } else {
    if (width < 2 || height < 2) throw IoError("PGM images must be at least 2x2");
    grid = square_raster_grid(width, height);
  }
  auto values = read_payload(in, grid->size(), maxval + 1);
  return DiscreteImage(grid, maxval + 1, std::move(values));
}

void write_hexpgm(const DiscreteImage& img, std::ostream& out) {
  const Grid& grid = img.grid();
  const GridSpec& spec = grid.spec();
  if (img.labels() > 65536) throw std::invalid_argument("write_image: at most 65536 labels");
  const auto rows = grid.rows();
  out << "HEXPGM 1\n"
      << std::setprecision(kDigits) << spec.d << ' ' << spec.width << ' ' << spec.height << ' '
      << img.labels() << '\n'
      << rows.front().j << ' ' << rows.back().j << '\n';
  for (const RowRange& r : rows) out << r.imin << ' ' << r.imax << '\n';
  write_payload(out, img.values(), img.labels());
}

DiscreteImage read_hexpgm(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != " 1") throw IoError("unsupported HEXPGM version");
  GridSpec spec{LatticeKind::Hex, 0, 0, 0};
  long labels = 0;
  if (!std::getline(in, line)) throw IoError("truncated HEXPGM header");
  {
    std::istringstream fields(line);
    if (!(fields >> spec.d >> spec.width >> spec.height >> labels)) throw IoError("malformed HEXPGM header");
  }
  if (labels < 2 || labels > 65536) throw IoError("HEXPGM label count out of range");
  GridPtr grid;
  try {
    grid = build_grid(spec);
  } catch (const std::invalid_argument& e) {
    throw IoError(std::string("invalid HEXPGM grid: ") + e.what());
  }
  int jmin = 0, jmax = 0;
  if (!std::getline(in, line) || !(std::istringstream(line) >> jmin >> jmax)) {
    throw IoError("malformed HEXPGM row range");
  }
  const auto rows = grid->rows();
  if (jmin != rows.front().j || jmax != rows.back().j) throw IoError("HEXPGM rows do not match the grid");
  for (const RowRange& r : rows) {
    int imin = 0, imax = 0;
    if (!std::getline(in, line) || !(std::istringstream(line) >> imin >> imax)) {
      throw IoError("malformed HEXPGM row line");
    }
    if (imin != r.imin || imax != r.imax) throw IoError("HEXPGM row extent does not match the grid");
  }
  auto values = read_payload(in, grid->size(), static_cast<int>(labels));
  return DiscreteImage(grid, static_cast<int>(labels), std::move(values));
}

}  // namespace

void write_image(const DiscreteImage& img, std::ostream& out) {
  if (img.grid().kind() == LatticeKind::Square) {
    write_pgm(img, out);
  } else {
    write_hexpgm(img, out);
  }
  if (!out) throw IoError("write failed");
}

void write_image(const DiscreteImage& img, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  write_image(img, out);
}

DiscreteImage read_image(std::istream& in) {
  char magic[2] = {0, 0};
  in.read(magic, 2);
  if (in.gcount() != 2) throw IoError("empty or truncated image file");
  if (magic[0] == 'P' && magic[1] == '5') return read_pgm(in);
  if (magic[0] == 'H' && magic[1] == 'E') {
    char rest[4] = {0, 0, 0, 0};
    in.read(rest, 4);
    if (in.gcount() != 4 || std::string(rest, 4) != "XPGM") throw IoError("unknown image format");
    return read_hexpgm(in);
  }
  throw IoError("unknown image format");
}

DiscreteImage read_image(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  return read_image(in);
}

}  // namespace hextv
