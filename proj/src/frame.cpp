#include "tw/frame.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <set>
#include <sstream>

#include "tw/error.hpp"

namespace tw {

namespace {

constexpr char kMagic[4] = {'T', 'F', 'R', 'M'};
constexpr std::uint16_t kVersion = 1;

void put_u16(std::string& out, std::uint16_t v) {
    out.push_back(static_cast<char>(v & 0xff));
    out.push_back(static_cast<char>(v >> 8));
}

void put_u32(std::string& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

std::uint16_t get_u16(const char* p) {
    return static_cast<std::uint16_t>(static_cast<unsigned char>(p[0]) |
                                      (static_cast<unsigned char>(p[1]) << 8));
}

std::uint32_t get_u32(const char* p) {
    std::uint32_t v = 0;
    for (int i = 3; i >= 0; --i) v = (v << 8) | static_cast<unsigned char>(p[i]);
    return v;
}

}  // namespace

bool RoiMaskSet::has_roi(int id) const {
    return std::binary_search(present.begin(), present.end(), id);
}

ThermalFrame read_frame(const std::filesystem::path& path, SensorRange range) {
    std::ifstream in(path, std::ios::binary);
    if (!in) raise(Errc::io_failure, "cannot open frame file " + path.string());
    std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

    constexpr size_t kHeader = 4 + 2 + 4 + 4 + 19;
    if (data.size() < kHeader || std::memcmp(data.data(), kMagic, 4) != 0)
        raise(Errc::malformed_frame, "bad magic in " + path.string());
    if (get_u16(data.data() + 4) != kVersion)
        raise(Errc::malformed_frame, "unsupported version in " + path.string());

    ThermalFrame frame;
    frame.width = static_cast<int>(get_u32(data.data() + 6));
    frame.height = static_cast<int>(get_u32(data.data() + 10));
    if (frame.width < 1 || frame.height < 1)
        raise(Errc::malformed_frame, "degenerate dimensions in " + path.string());

    frame.timestamp = parse_timestamp(std::string_view(data.data() + 14, 19));

    const size_t n = static_cast<size_t>(frame.width) * static_cast<size_t>(frame.height);
    if (data.size() != kHeader + 4 * n)
        raise(Errc::malformed_frame, "payload size mismatch in " + path.string() + " (expected " +
                                         std::to_string(n) + " values)");

    frame.values.resize(n);
    std::memcpy(frame.values.data(), data.data() + kHeader, 4 * n);

    for (float v : frame.values) {
        if (!std::isfinite(v) || v < range.lo_c || v > range.hi_c)
            raise(Errc::out_of_range,
                  "value " + std::to_string(v) + " outside sensor range in " + path.string());
    }
    return frame;
}

std::filesystem::path write_frame(const ThermalFrame& frame, const std::filesystem::path& dir) {
    const size_t n = static_cast<size_t>(frame.width) * static_cast<size_t>(frame.height);
    if (frame.width < 1 || frame.height < 1 || frame.values.size() != n)
        raise(Errc::malformed_frame, "frame dimensions do not match value count");

    const std::string stamp = format_timestamp(frame.timestamp);
    const std::string name = format_timestamp_filename(frame.timestamp) + ".tfr";
    const std::filesystem::path path = dir / name;
    if (std::filesystem::exists(path))
        raise(Errc::duplicate_timestamp, "frame already exists: " + path.string());

    std::string data;
    data.reserve(33 + 4 * n);
    data.append(kMagic, 4);
    put_u16(data, kVersion);
    put_u32(data, static_cast<std::uint32_t>(frame.width));
    put_u32(data, static_cast<std::uint32_t>(frame.height));
    data.append(stamp);
    const size_t payload = data.size();
    data.resize(payload + 4 * n);
    std::memcpy(data.data() + payload, frame.values.data(), 4 * n);

    std::ofstream out(path, std::ios::binary);
    if (!out.write(data.data(), static_cast<std::streamsize>(data.size())))
        raise(Errc::io_failure, "cannot write " + path.string());
    out.close();

    std::ofstream idx(dir / "frames.idx", std::ios::app);
    if (!(idx << name << '\t' << stamp << '\n'))
        raise(Errc::io_failure, "cannot update frames.idx in " + dir.string());
    return path;
}

RoiMaskSet read_mask(const std::filesystem::path& pgm_path) {
    std::ifstream in(pgm_path, std::ios::binary);
    if (!in) raise(Errc::io_failure, "cannot open mask " + pgm_path.string());

    std::string magic;
    int width = 0, height = 0, maxval = 0;
    in >> magic >> width >> height >> maxval;
    if (magic != "P5" || maxval != 255 || width < 1 || height < 1)
        raise(Errc::malformed_mask, "not an 8-bit P5 graymap: " + pgm_path.string());
    in.get();  // single whitespace after the header

    RoiMaskSet mask;
    mask.width = width;
    mask.height = height;
    mask.labels.resize(static_cast<size_t>(width) * static_cast<size_t>(height));
    if (!in.read(reinterpret_cast<char*>(mask.labels.data()),
                 static_cast<std::streamsize>(mask.labels.size())))
        raise(Errc::malformed_mask, "truncated pixel data in " + pgm_path.string());

    std::set<int> seen;
    for (std::uint8_t v : mask.labels) {
        if (v > kNumRois)
            raise(Errc::malformed_mask,
                  "pixel value " + std::to_string(v) + " is not an ROI id in " + pgm_path.string());
        if (v != kRoiUnassigned) seen.insert(v);
    }
    mask.present.assign(seen.begin(), seen.end());

    // Sidecar: visible ids with labels, plus explicit absences.
    const std::filesystem::path sidecar = pgm_path.string() + ".rois";
    std::ifstream side(sidecar);
    if (!side) raise(Errc::io_failure, "missing mask sidecar " + sidecar.string());
    std::set<int> declared, declared_absent;
    std::string line;
    while (std::getline(side, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string first, label;
        ls >> first >> label;
        if (first == "absent") {
            const int id = roi_id(label);
            if (id == 0) raise(Errc::malformed_mask, "unknown ROI label '" + label + "'");
            declared_absent.insert(id);
        } else {
            const int id = std::stoi(first);
            if (id < 1 || id > kNumRois || roi_label(id) != label)
                raise(Errc::malformed_mask, "id/label mismatch in sidecar: " + line);
            declared.insert(id);
        }
    }

    for (int id = 1; id <= kNumRois; ++id) {
        const bool has_pixels = seen.count(id) > 0;
        if (has_pixels && declared_absent.count(id))
            raise(Errc::malformed_mask,
                  std::string("ROI ") + std::string(roi_label(id)) + " declared absent but present");
        if (!has_pixels && !declared_absent.count(id))
            raise(Errc::malformed_mask, std::string("ROI ") + std::string(roi_label(id)) +
                                            " has no pixels and is not declared absent");
    }
    mask.absent.assign(declared_absent.begin(), declared_absent.end());
    return mask;
}

void write_mask(const RoiMaskSet& mask, const std::filesystem::path& pgm_path) {
    std::ofstream out(pgm_path, std::ios::binary);
    if (!out) raise(Errc::io_failure, "cannot write mask " + pgm_path.string());
    out << "P5\n" << mask.width << " " << mask.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(mask.labels.data()),
              static_cast<std::streamsize>(mask.labels.size()));

    std::ofstream side(pgm_path.string() + ".rois");
    for (int id : mask.present) side << id << " " << roi_label(id) << "\n";
    for (int id = 1; id <= kNumRois; ++id)
        if (!mask.has_roi(id)) side << "absent " << roi_label(id) << "\n";
}

std::vector<float> roi_pixels(const ThermalFrame& frame, const RoiMaskSet& mask, int roi) {
    if (frame.width != mask.width || frame.height != mask.height)
        raise(Errc::dimension_mismatch,
              "frame " + std::to_string(frame.width) + "x" + std::to_string(frame.height) +
                  " vs mask " + std::to_string(mask.width) + "x" + std::to_string(mask.height));
    if (roi < 1 || roi > kNumRois) raise(Errc::unknown_roi, "roi id " + std::to_string(roi));

    std::vector<float> out;
    for (size_t i = 0; i < frame.values.size(); ++i)
        if (mask.labels[i] == roi) out.push_back(frame.values[i]);
    return out;
}

}  // namespace tw
