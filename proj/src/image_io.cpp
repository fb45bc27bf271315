#include "spi/image_io.hpp"

#include <png.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <vector>

#include "spi/errors.hpp"

namespace spi {

namespace {

struct Raster {
  int w = 0, h = 0;
  std::vector<double> pix;  // row-major, [0, 255]
  double& at(int i, int j) { return pix[static_cast<size_t>(i) * w + j]; }
  double at(int i, int j) const { return pix[static_cast<size_t>(i) * w + j]; }
};

Raster decode_png(const std::string& path) {
  png_image im{};
  im.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&im, path.c_str()))
    throw FormatError("cannot decode PNG '" + path + "': " + im.message);

  const bool color = (im.format & PNG_FORMAT_FLAG_COLOR) != 0;
  im.format = color ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
  const size_t stride = PNG_IMAGE_ROW_STRIDE(im);
  std::vector<png_byte> buf(PNG_IMAGE_BUFFER_SIZE(im, stride));
  const png_color black{0, 0, 0};
  if (!png_image_finish_read(&im, &black, buf.data(), static_cast<png_int_32>(stride), nullptr)) {
    png_image_free(&im);
    throw FormatError("cannot decode PNG '" + path + "': " + im.message);
  }

  Raster out;
  out.w = static_cast<int>(im.width);
  out.h = static_cast<int>(im.height);
  out.pix.resize(static_cast<size_t>(out.w) * out.h);
  for (int i = 0; i < out.h; ++i) {
    const png_byte* row = buf.data() + static_cast<size_t>(i) * stride;
    for (int j = 0; j < out.w; ++j) {
      if (color) {
        const png_byte* p = row + 3 * j;
        out.at(i, j) = 0.299 * p[0] + 0.587 * p[1] + 0.114 * p[2];
      } else {
        out.at(i, j) = row[j];
      }
    }
  }
  return out;
}

// P2 (ascii) and P5 (binary) portable graymaps, maxval up to 65535.
Raster decode_pgm(std::ifstream& in, const std::string& path) {
  auto fail = [&path](const std::string& why) -> void {
    throw FormatError("cannot decode PGM '" + path + "': " + why);
  };
  auto next_token = [&in]() {
    std::string tok;
    int c;
    while ((c = in.get()) != EOF) {
      if (c == '#') {
        while ((c = in.get()) != EOF && c != '\n') {}
      } else if (!std::isspace(c)) {
        tok.push_back(static_cast<char>(c));
        while ((c = in.peek()) != EOF && !std::isspace(c)) tok.push_back(static_cast<char>(in.get()));
        break;
      }
    }
    return tok;
  };

  const std::string magic = next_token();
  if (magic != "P2" && magic != "P5") fail("unsupported magic '" + magic + "'");
  const std::string ws = next_token(), hs = next_token(), ms = next_token();
  if (ws.empty() || hs.empty() || ms.empty()) fail("truncated header");
  const int w = std::stoi(ws), h = std::stoi(hs), maxval = std::stoi(ms);
  if (w <= 0 || h <= 0 || maxval <= 0 || maxval > 65535) fail("bad header values");

  Raster out;
  out.w = w;
  out.h = h;
  out.pix.resize(static_cast<size_t>(w) * h);
  const double scale = 255.0 / maxval;
  const size_t n = out.pix.size();
  if (magic == "P2") {
    for (size_t q = 0; q < n; ++q) {
      const std::string tok = next_token();
      if (tok.empty()) fail("truncated pixel data");
      out.pix[q] = std::stoi(tok) * scale;
    }
  } else {
    in.get();  // single whitespace after maxval
    const int bytes = maxval > 255 ? 2 : 1;
    std::vector<unsigned char> raw(n * bytes);
    in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
    if (static_cast<size_t>(in.gcount()) != raw.size()) fail("truncated pixel data");
    for (size_t q = 0; q < n; ++q) {
      const int v = bytes == 2 ? (raw[2 * q] << 8) | raw[2 * q + 1] : raw[q];
      out.pix[q] = v * scale;
    }
  }
  return out;
}

Raster decode_raster(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open image '" + path + "'");
  unsigned char magic[8] = {};
  in.read(reinterpret_cast<char*>(magic), 8);
  if (in.gcount() >= 8 && png_sig_cmp(magic, 0, 8) == 0) {
    in.close();
    return decode_png(path);
  }
  if (in.gcount() >= 2 && magic[0] == 'P' && (magic[1] == '2' || magic[1] == '5')) {
    in.clear();
    in.seekg(0);
    return decode_pgm(in, path);
  }
  throw FormatError("unsupported image format for '" + path + "' (PNG or PGM expected)");
}

Raster resize_raster(const Raster& src, int w, int h) {
  if (src.w == w && src.h == h) return src;
  Raster out;
  out.w = w;
  out.h = h;
  out.pix.resize(static_cast<size_t>(w) * h);
  const double sx = static_cast<double>(src.w) / w;
  const double sy = static_cast<double>(src.h) / h;
  for (int i = 0; i < h; ++i) {
    // Pixel-center alignment: dst center maps to src coordinate space.
    const double fy = std::clamp((i + 0.5) * sy - 0.5, 0.0, static_cast<double>(src.h - 1));
    const int y0 = static_cast<int>(fy);
    const int y1 = std::min(y0 + 1, src.h - 1);
    const double wy = fy - y0;
    for (int j = 0; j < w; ++j) {
      const double fx = std::clamp((j + 0.5) * sx - 0.5, 0.0, static_cast<double>(src.w - 1));
      const int x0 = static_cast<int>(fx);
      const int x1 = std::min(x0 + 1, src.w - 1);
      const double wx = fx - x0;
      out.at(i, j) = (1.0 - wy) * ((1.0 - wx) * src.at(y0, x0) + wx * src.at(y0, x1)) +
                     wy * ((1.0 - wx) * src.at(y1, x0) + wx * src.at(y1, x1));
    }
  }
  return out;
}

GrayImage to_gray_image(Raster&& r) {
  GrayImage img;
  img.side = r.w;
  img.pix = std::move(r.pix);
  return img;
}

}  // namespace

GrayImage load_gray_image(const std::string& path) {
  Raster r = decode_raster(path);
  if (r.w != r.h)
    throw ShapeError("image '" + path + "' is not square (" + std::to_string(r.w) + "x" +
                     std::to_string(r.h) + "); use load_and_normalize");
  return to_gray_image(std::move(r));
}

GrayImage resize_bilinear(const GrayImage& img, int side) {
  Raster r;
  r.w = img.side;
  r.h = img.side;
  r.pix = img.pix;
  return to_gray_image(resize_raster(r, side, side));
}

GrayImage load_and_normalize(const std::string& path, int side) {
  if (side <= 0) throw ConfigError("load_and_normalize: side must be positive");
  Raster r = decode_raster(path);
  return to_gray_image(resize_raster(r, side, side));
}

void save_png_gray(const GrayImage& img, const std::string& path) {
  const int r = img.side;
  std::vector<png_byte> buf(static_cast<size_t>(r) * r);
  for (size_t q = 0; q < buf.size(); ++q)
    buf[q] = static_cast<png_byte>(std::lround(std::clamp(img.pix[q], 0.0, 255.0)));
  png_image im{};
  im.version = PNG_IMAGE_VERSION;
  im.width = static_cast<png_uint_32>(r);
  im.height = static_cast<png_uint_32>(r);
  im.format = PNG_FORMAT_GRAY;
  if (!png_image_write_to_file(&im, path.c_str(), 0, buf.data(), r, nullptr))
    throw IoError("cannot write PNG '" + path + "': " + im.message);
}

void save_pgm(const GrayImage& img, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write PGM '" + path + "'");
  out << "P5\n" << img.side << ' ' << img.side << "\n255\n";
  for (double p : img.pix)
    out.put(static_cast<char>(std::lround(std::clamp(p, 0.0, 255.0))));
  if (!out) throw IoError("write failed for PGM '" + path + "'");
}

}  // namespace spi
