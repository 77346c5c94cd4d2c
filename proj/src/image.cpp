#include "shapesig/image.hpp"

#include "shapesig/error.hpp"

#include <png.h>

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

namespace shapesig {

namespace {

double luminance(unsigned r, unsigned g, unsigned b)
{
    return (0.299 * r + 0.587 * g + 0.114 * b) / 255.0;
}

[[noreturn]] void format_error(const std::string& what)
{
    throw Error(ErrorCode::FormatError, what);
}

// ---------------------------------------------------------------------------
// GIF

class ByteReader {
public:
    explicit ByteReader(const std::vector<unsigned char>& bytes) : bytes_(bytes) {}

    std::uint8_t u8()
    {
        if (pos_ >= bytes_.size())
            format_error("gif: unexpected end of data");
        return bytes_[pos_++];
    }

    std::uint16_t u16()
    {
        const unsigned lo = u8();
        const unsigned hi = u8();
        return static_cast<std::uint16_t>(lo | (hi << 8));
    }

    void skip(std::size_t n)
    {
        if (n > bytes_.size() - pos_)
            format_error("gif: unexpected end of data");
        pos_ += n;
    }

    const unsigned char* take(std::size_t n)
    {
        if (n > bytes_.size() - pos_)
            format_error("gif: unexpected end of data");
        const unsigned char* p = bytes_.data() + pos_;
        pos_ += n;
        return p;
    }

    void skip_sub_blocks()
    {
        for (std::uint8_t len = u8(); len != 0; len = u8())
            skip(len);
    }

private:
    const std::vector<unsigned char>& bytes_;
    std::size_t pos_ = 0;
};

using Palette = std::vector<std::array<std::uint8_t, 3>>;

Palette read_palette(ByteReader& in, unsigned size_bits)
{
    Palette palette(std::size_t{1} << (size_bits + 1));
    for (auto& rgb : palette) {
        rgb[0] = in.u8();
        rgb[1] = in.u8();
        rgb[2] = in.u8();
    }
    return palette;
}

// Variable-width LZW as used by GIF (LSB-first code packing, max 12 bits).
std::vector<std::uint8_t> lzw_decode(const std::vector<std::uint8_t>& data, unsigned min_code_size,
                                     std::size_t pixel_count)
{
    if (min_code_size < 2 || min_code_size > 8)
        format_error("gif: invalid LZW minimum code size");

    constexpr int kMaxCodes = 4096;
    const int clear_code = 1 << min_code_size;
    const int end_code = clear_code + 1;

    std::array<std::int16_t, kMaxCodes> prefix{};
    std::array<std::uint8_t, kMaxCodes> suffix{};
    std::array<std::uint16_t, kMaxCodes> length{};
    for (int i = 0; i < clear_code; ++i) {
        prefix[i] = -1;
        suffix[i] = static_cast<std::uint8_t>(i);
        length[i] = 1;
    }

    std::vector<std::uint8_t> out;
    out.reserve(pixel_count);

    int code_size = static_cast<int>(min_code_size) + 1;
    int next_code = end_code + 1;
    int previous = -1;

    std::uint32_t bit_buffer = 0;
    int bit_count = 0;
    std::size_t byte_pos = 0;

    auto emit = [&](int code) {
        const std::size_t start = out.size();
        out.resize(start + length[code]);
        for (int c = code, i = length[code] - 1; c >= 0; c = prefix[c], --i)
            out[start + i] = suffix[c];
    };
    auto first_byte = [&](int code) {
        while (prefix[code] >= 0)
            code = prefix[code];
        return suffix[code];
    };

    while (out.size() < pixel_count) {
        while (bit_count < code_size) {
            if (byte_pos >= data.size())
                return out; // truncated stream; caller pads
            bit_buffer |= static_cast<std::uint32_t>(data[byte_pos++]) << bit_count;
            bit_count += 8;
        }
        const int code = static_cast<int>(bit_buffer & ((1u << code_size) - 1));
        bit_buffer >>= code_size;
        bit_count -= code_size;

        if (code == clear_code) {
            code_size = static_cast<int>(min_code_size) + 1;
            next_code = end_code + 1;
            previous = -1;
            continue;
        }
        if (code == end_code)
            break;

        if (previous < 0) {
            if (code >= clear_code)
                format_error("gif: corrupt LZW stream");
            emit(code);
            previous = code;
            continue;
        }

        if (code < next_code) {
            emit(code);
            if (next_code < kMaxCodes) {
                prefix[next_code] = static_cast<std::int16_t>(previous);
                suffix[next_code] = first_byte(code);
                length[next_code] = static_cast<std::uint16_t>(length[previous] + 1);
                ++next_code;
            }
        } else if (code == next_code && next_code < kMaxCodes) {
            prefix[next_code] = static_cast<std::int16_t>(previous);
            suffix[next_code] = first_byte(previous);
            length[next_code] = static_cast<std::uint16_t>(length[previous] + 1);
            ++next_code;
            emit(code);
        } else {
            format_error("gif: corrupt LZW stream");
        }
        previous = code;
        if (next_code == (1 << code_size) && code_size < 12)
            ++code_size;
    }
    return out;
}

// Maps the k-th decoded row of an interlaced frame to its display row.
std::vector<std::size_t> interlace_rows(std::size_t height)
{
    std::vector<std::size_t> rows;
    rows.reserve(height);
    constexpr std::array<std::size_t, 4> start{0, 4, 2, 1};
    constexpr std::array<std::size_t, 4> step{8, 8, 4, 2};
    for (std::size_t pass = 0; pass < 4; ++pass)
        for (std::size_t r = start[pass]; r < height; r += step[pass])
            rows.push_back(r);
    return rows;
}

} // namespace

GrayImage decode_gif(const std::vector<unsigned char>& bytes)
{
    ByteReader in(bytes);
    const unsigned char* sig = in.take(6);
    if (std::memcmp(sig, "GIF87a", 6) != 0 && std::memcmp(sig, "GIF89a", 6) != 0)
        format_error("gif: bad signature");

    const std::size_t width = in.u16();
    const std::size_t height = in.u16();
    const std::uint8_t flags = in.u8();
    const std::uint8_t background = in.u8();
    in.u8(); // pixel aspect ratio

    Palette global;
    if (flags & 0x80)
        global = read_palette(in, flags & 0x07);

    if (width == 0 || height == 0)
        throw Error(ErrorCode::EmptyImage, "gif: zero-sized logical screen");

    GrayImage image;
    image.width = width;
    image.height = height;
    double fill = 0.0;
    if (background < global.size()) {
        const auto& c = global[background];
        fill = luminance(c[0], c[1], c[2]);
    }
    image.intensity.assign(width * height, fill);

    for (;;) {
        const std::uint8_t block = in.u8();
        if (block == 0x3B)
            format_error("gif: no image data");
        if (block == 0x21) {
            in.u8(); // label
            in.skip_sub_blocks();
            continue;
        }
        if (block != 0x2C)
            format_error("gif: unknown block type");

        const std::size_t left = in.u16();
        const std::size_t top = in.u16();
        const std::size_t frame_w = in.u16();
        const std::size_t frame_h = in.u16();
        const std::uint8_t frame_flags = in.u8();
        Palette local;
        if (frame_flags & 0x80)
            local = read_palette(in, frame_flags & 0x07);
        const Palette& palette = local.empty() ? global : local;
        if (palette.empty())
            format_error("gif: frame without color table");

        const unsigned min_code_size = in.u8();
        std::vector<std::uint8_t> data;
        for (std::uint8_t len = in.u8(); len != 0; len = in.u8()) {
            const unsigned char* p = in.take(len);
            data.insert(data.end(), p, p + len);
        }

        std::vector<std::uint8_t> indices = lzw_decode(data, min_code_size, frame_w * frame_h);
        indices.resize(frame_w * frame_h, 0);

        std::vector<std::size_t> row_map(frame_h);
        if (frame_flags & 0x40) {
            row_map = interlace_rows(frame_h);
        } else {
            for (std::size_t r = 0; r < frame_h; ++r)
                row_map[r] = r;
        }

        for (std::size_t k = 0; k < frame_h; ++k) {
            const std::size_t row = top + row_map[k];
            if (row >= height)
                continue;
            for (std::size_t c = 0; c < frame_w; ++c) {
                const std::size_t col = left + c;
                if (col >= width)
                    continue;
                const std::uint8_t idx = indices[k * frame_w + c];
                if (idx >= palette.size())
                    continue;
                const auto& rgb = palette[idx];
                image.intensity[row * width + col] = luminance(rgb[0], rgb[1], rgb[2]);
            }
        }
        return image;
    }
}

// ---------------------------------------------------------------------------
// PNM

namespace {

class PnmHeader {
public:
    explicit PnmHeader(const std::vector<unsigned char>& bytes) : bytes_(bytes) {}

    std::size_t next_int()
    {
        skip_space();
        if (pos_ >= bytes_.size() || !std::isdigit(bytes_[pos_]))
            format_error("pnm: malformed header");
        std::size_t value = 0;
        while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
            value = value * 10 + static_cast<std::size_t>(bytes_[pos_] - '0');
            if (value > (std::size_t{1} << 31))
                format_error("pnm: header value out of range");
            ++pos_;
        }
        return value;
    }

    // ASCII P1 packs bits as single '0'/'1' characters that need not be separated.
    int next_bit()
    {
        skip_space();
        if (pos_ >= bytes_.size())
            format_error("pnm: truncated data");
        const unsigned char c = bytes_[pos_++];
        if (c != '0' && c != '1')
            format_error("pnm: bad bit value");
        return c - '0';
    }

    // Exactly one whitespace byte separates the header from binary data.
    std::size_t binary_start() const { return pos_ + 1; }

private:
    void skip_space()
    {
        while (pos_ < bytes_.size()) {
            if (bytes_[pos_] == '#') {
                while (pos_ < bytes_.size() && bytes_[pos_] != '\n')
                    ++pos_;
            } else if (std::isspace(bytes_[pos_])) {
                ++pos_;
            } else {
                break;
            }
        }
    }

    const std::vector<unsigned char>& bytes_;
    std::size_t pos_ = 2;
};

} // namespace

GrayImage decode_pnm(const std::vector<unsigned char>& bytes)
{
    if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] < '1' || bytes[1] > '6')
        format_error("pnm: bad magic");
    const int type = bytes[1] - '0';
    PnmHeader header(bytes);

    GrayImage image;
    image.width = header.next_int();
    image.height = header.next_int();
    if (image.width == 0 || image.height == 0)
        throw Error(ErrorCode::EmptyImage, "pnm: zero-sized image");
    const std::size_t count = image.width * image.height;
    const bool bitmap = type == 1 || type == 4;
    const std::size_t maxval = bitmap ? 1 : header.next_int();
    if (maxval == 0 || maxval > 65535)
        format_error("pnm: bad maxval");
    image.intensity.resize(count);
    const double scale = 1.0 / static_cast<double>(maxval);

    switch (type) {
    case 1:
        // PBM: 1 = black (background), 0 = white.
        for (std::size_t i = 0; i < count; ++i)
            image.intensity[i] = header.next_bit() ? 0.0 : 1.0;
        break;
    case 2:
        for (std::size_t i = 0; i < count; ++i)
            image.intensity[i] = std::min(1.0, static_cast<double>(header.next_int()) * scale);
        break;
    case 3:
        for (std::size_t i = 0; i < count; ++i) {
            const double r = static_cast<double>(header.next_int()) * scale;
            const double g = static_cast<double>(header.next_int()) * scale;
            const double b = static_cast<double>(header.next_int()) * scale;
            image.intensity[i] = std::min(1.0, 0.299 * r + 0.587 * g + 0.114 * b);
        }
        break;
    case 4: {
        const std::size_t stride = (image.width + 7) / 8;
        const std::size_t start = header.binary_start();
        if (bytes.size() < start + stride * image.height)
            format_error("pnm: truncated data");
        for (std::size_t r = 0; r < image.height; ++r)
            for (std::size_t c = 0; c < image.width; ++c) {
                const unsigned char byte = bytes[start + r * stride + c / 8];
                const bool black = (byte >> (7 - c % 8)) & 1;
                image.intensity[r * image.width + c] = black ? 0.0 : 1.0;
            }
        break;
    }
    case 5:
    case 6: {
        const std::size_t channels = type == 6 ? 3 : 1;
        const std::size_t sample_bytes = maxval > 255 ? 2 : 1;
        const std::size_t start = header.binary_start();
        if (bytes.size() < start + count * channels * sample_bytes)
            format_error("pnm: truncated data");
        auto sample = [&](std::size_t k) {
            const std::size_t off = start + k * sample_bytes;
            const unsigned v = sample_bytes == 2 ? (unsigned{bytes[off]} << 8) | bytes[off + 1] : bytes[off];
            return std::min(1.0, static_cast<double>(v) * scale);
        };
        for (std::size_t i = 0; i < count; ++i) {
            if (channels == 1) {
                image.intensity[i] = sample(i);
            } else {
                image.intensity[i] =
                    0.299 * sample(3 * i) + 0.587 * sample(3 * i + 1) + 0.114 * sample(3 * i + 2);
            }
        }
        break;
    }
    }
    return image;
}

namespace {

GrayImage decode_png(const std::vector<unsigned char>& bytes)
{
    png_image png{};
    png.version = PNG_IMAGE_VERSION;
    if (!png_image_begin_read_from_memory(&png, bytes.data(), bytes.size()))
        format_error(std::string("png: ") + png.message);
    png.format = PNG_FORMAT_GRAY;
    std::vector<png_byte> buffer(PNG_IMAGE_SIZE(png));
    if (!png_image_finish_read(&png, nullptr, buffer.data(), 0, nullptr)) {
        png_image_free(&png);
        format_error(std::string("png: ") + png.message);
    }
    GrayImage image;
    image.width = png.width;
    image.height = png.height;
    image.intensity.resize(buffer.size());
    std::transform(buffer.begin(), buffer.end(), image.intensity.begin(),
                   [](png_byte v) { return static_cast<double>(v) / 255.0; });
    if (image.empty())
        throw Error(ErrorCode::EmptyImage, "png: zero-sized image");
    return image;
}

} // namespace

GrayImage decode_image(const std::vector<unsigned char>& bytes)
{
    if (bytes.empty())
        throw Error(ErrorCode::EmptyImage, "empty file");
    if (bytes.size() >= 6 && std::memcmp(bytes.data(), "GIF8", 4) == 0)
        return decode_gif(bytes);
    if (bytes.size() >= 8 && png_sig_cmp(bytes.data(), 0, 8) == 0)
        return decode_png(bytes);
    if (bytes[0] == 'P')
        return decode_pnm(bytes);
    format_error("unrecognised image format");
}

GrayImage load_image(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorCode::IoError, "cannot open " + path.string());
    std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    try {
        return decode_image(bytes);
    } catch (const Error& e) {
        throw Error(e.code(), path.filename().string() + ": " + e.what());
    }
}

void write_pgm(const std::filesystem::path& path, const GrayImage& image)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error(ErrorCode::IoError, "cannot write " + path.string());
    out << "P5\n" << image.width << ' ' << image.height << "\n255\n";
    std::vector<char> row(image.width);
    for (std::size_t r = 0; r < image.height; ++r) {
        for (std::size_t c = 0; c < image.width; ++c) {
            const double v = std::clamp(image.at(r, c), 0.0, 1.0);
            row[c] = static_cast<char>(static_cast<unsigned char>(v * 255.0 + 0.5));
        }
        out.write(row.data(), static_cast<std::streamsize>(row.size()));
    }
    if (!out)
        throw Error(ErrorCode::IoError, "write failed: " + path.string());
}

bool is_supported_image(const std::filesystem::path& path)
{
    std::string ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    return ext == ".gif" || ext == ".png" || ext == ".pgm" || ext == ".pbm" || ext == ".pnm" || ext == ".ppm";
}

} // namespace shapesig
