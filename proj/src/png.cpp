#include "fatou/png.hpp"

#include <zlib.h>

#include <cmath>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace fatou {

namespace {

uint32_t crc_table_entry(uint32_t n) {
    uint32_t c = n;
    for (int k = 0; k < 8; ++k) c = (c & 1) ? 0xedb88320u ^ (c >> 1) : c >> 1;
    return c;
}

uint32_t crc32_of(const uint8_t* data, size_t len, uint32_t crc = 0xffffffffu) {
    static uint32_t table[256];
    static bool init = false;
    if (!init) {
        for (uint32_t n = 0; n < 256; ++n) table[n] = crc_table_entry(n);
        init = true;
    }
    for (size_t i = 0; i < len; ++i) crc = table[(crc ^ data[i]) & 0xff] ^ (crc >> 8);
    return crc;
}

void push_u32(std::vector<uint8_t>& v, uint32_t x) {
    v.push_back(uint8_t(x >> 24));
    v.push_back(uint8_t(x >> 16));
    v.push_back(uint8_t(x >> 8));
    v.push_back(uint8_t(x));
}

void push_chunk(std::vector<uint8_t>& out, const char type[4],
                const std::vector<uint8_t>& payload) {
    push_u32(out, uint32_t(payload.size()));
    size_t crc_start = out.size();
    out.insert(out.end(), type, type + 4);
    out.insert(out.end(), payload.begin(), payload.end());
    uint32_t crc = crc32_of(out.data() + crc_start, out.size() - crc_start) ^ 0xffffffffu;
    push_u32(out, crc);
}

}  // namespace

std::vector<uint8_t> encode_png_rgb8(const uint8_t* data, int width, int height) {
    // filter byte 0 per scanline
    std::vector<uint8_t> raw;
    raw.reserve(size_t(height) * (size_t(width) * 3 + 1));
    for (int y = 0; y < height; ++y) {
        raw.push_back(0);
        raw.insert(raw.end(), data + size_t(y) * width * 3,
                   data + (size_t(y) + 1) * width * 3);
    }
    uLongf bound = compressBound(uLong(raw.size()));
    std::vector<uint8_t> zdata(bound);
    if (compress2(zdata.data(), &bound, raw.data(), uLong(raw.size()), 6) != Z_OK)
        throw std::runtime_error("png: deflate failed");
    zdata.resize(bound);

    std::vector<uint8_t> out{0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};
    std::vector<uint8_t> ihdr;
    push_u32(ihdr, uint32_t(width));
    push_u32(ihdr, uint32_t(height));
    ihdr.push_back(8);  // bit depth
    ihdr.push_back(2);  // color type RGB
    ihdr.push_back(0);
    ihdr.push_back(0);
    ihdr.push_back(0);
    push_chunk(out, "IHDR", ihdr);
    push_chunk(out, "IDAT", zdata);
    push_chunk(out, "IEND", {});
    return out;
}

void write_png_rgb8(const std::string& path, const uint8_t* data, int width,
                    int height) {
    std::vector<uint8_t> bytes = encode_png_rgb8(data, width, height);
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    f.write(reinterpret_cast<const char*>(bytes.data()), std::streamsize(bytes.size()));
}

std::vector<uint8_t> colorize(const LabelGrid& g, ColorMode mode) {
    std::vector<uint8_t> rgb(size_t(g.px) * g.py * 3, 0);
    for (size_t i = 0; i < g.escape.size(); ++i) {
        uint8_t r = 0, gg = 0, b = 0;
        if (mode == ColorMode::EscapeTime) {
            int32_t t = g.escape[i];
            if (t != SATURATED) {
                double phase = 2.0 * M_PI * (t % 24) / 24.0;
                r = uint8_t(128 + 110 * std::sin(phase));
                gg = uint8_t(128 + 110 * std::sin(phase + 2.1));
                b = uint8_t(128 + 110 * std::sin(phase + 4.2));
            }
        } else {
            int32_t c = g.comp[i];
            if (c != NO_COMPONENT) {
                uint32_t h = uint32_t(c) * 2654435761u;
                r = uint8_t(64 + (h & 0xbf));
                gg = uint8_t(64 + ((h >> 8) & 0xbf));
                b = uint8_t(64 + ((h >> 16) & 0xbf));
            }
        }
        rgb[3 * i] = r;
        rgb[3 * i + 1] = gg;
        rgb[3 * i + 2] = b;
    }
    return rgb;
}

void write_grid_png(const std::string& path, const LabelGrid& g, ColorMode mode) {
    std::vector<uint8_t> rgb = colorize(g, mode);
    write_png_rgb8(path, rgb.data(), g.px, g.py);
}

}  // namespace fatou
