#include "gff2d/io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "gff2d/error.hpp"

namespace gff2d {

namespace {

using nlohmann::json;

void write_le_doubles(std::ofstream& os, const std::vector<double>& values) {
    static_assert(sizeof(double) == 8);
    if constexpr (std::endian::native == std::endian::little) {
        os.write(reinterpret_cast<const char*>(values.data()),
                 std::streamsize(values.size() * 8));
    } else {
        for (double v : values) {
            std::uint64_t bits;
            std::memcpy(&bits, &v, 8);
            char buf[8];
            for (int i = 0; i < 8; ++i) buf[i] = char((bits >> (8 * i)) & 0xff);
            os.write(buf, 8);
        }
    }
}

std::vector<double> read_le_doubles(std::ifstream& is, std::size_t count) {
    std::vector<double> values(count);
    if constexpr (std::endian::native == std::endian::little) {
        is.read(reinterpret_cast<char*>(values.data()), std::streamsize(count * 8));
    } else {
        for (auto& v : values) {
            char buf[8];
            is.read(buf, 8);
            std::uint64_t bits = 0;
            for (int i = 0; i < 8; ++i) bits |= std::uint64_t(std::uint8_t(buf[i])) << (8 * i);
            std::memcpy(&v, &bits, 8);
        }
    }
    if (!is) throw config_error("field read: truncated value block");
    return values;
}

}  // namespace

void write_field(const std::string& path, const FieldSample& sample) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw config_error("write_field: cannot open " + path);
    json header{{"corner", {sample.box.corner.x, sample.box.corner.y}},
                {"width", sample.box.width},
                {"height", sample.box.height},
                {"seed", sample.seed},
                {"sampler", sample.sampler == SamplerKind::dense ? "dense" : "spectral"}};
    os << header.dump() << '\n';
    write_le_doubles(os, sample.values);
}

FieldSample read_field(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw config_error("read_field: cannot open " + path);
    std::string line;
    if (!std::getline(is, line)) throw config_error("read_field: missing header");
    json header = json::parse(line);
    FieldSample out;
    out.box.corner = {header.at("corner").at(0).get<std::int64_t>(),
                      header.at("corner").at(1).get<std::int64_t>()};
    out.box.width = header.at("width").get<std::int64_t>();
    out.box.height = header.at("height").get<std::int64_t>();
    out.seed = header.at("seed").get<std::uint64_t>();
    out.sampler = header.at("sampler").get<std::string>() == "dense" ? SamplerKind::dense
                                                                     : SamplerKind::spectral;
    out.values = read_le_doubles(is, std::size_t(out.box.vertex_count()));
    return out;
}

void write_field_csv(const std::string& path, const FieldSample& sample) {
    std::ofstream os(path);
    if (!os) throw config_error("write_field_csv: cannot open " + path);
    os << "x,y,value\n";
    char buf[96];
    for (std::int64_t i = 0; i < sample.box.vertex_count(); ++i) {
        Point p = sample.box.point_at(i);
        std::snprintf(buf, sizeof buf, "%lld,%lld,%.17g\n", (long long)p.x, (long long)p.y,
                      sample.values[std::size_t(i)]);
        os << buf;
    }
}

void write_mask(const std::string& path, const OpenMask& mask) {
    std::ofstream os(path);
    if (!os) throw config_error("write_mask: cannot open " + path);
    json header{{"corner", {mask.box.corner.x, mask.box.corner.y}},
                {"width", mask.box.width},
                {"height", mask.box.height},
                {"lambda", mask.lambda},
                {"alpha", mask.alpha}};
    os << header.dump() << '\n';
    for (std::int64_t y = 0; y < mask.box.height; ++y) {
        bool state = false;  // runs start closed
        std::int64_t run = 0;
        std::ostringstream row;
        for (std::int64_t x = 0; x < mask.box.width; ++x) {
            bool v = mask.open[std::size_t(y * mask.box.width + x)] != 0;
            if (v == state) {
                ++run;
            } else {
                row << run << ' ';
                state = v;
                run = 1;
            }
        }
        row << run;
        os << row.str() << '\n';
    }
}

OpenMask read_mask(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw config_error("read_mask: cannot open " + path);
    std::string line;
    if (!std::getline(is, line)) throw config_error("read_mask: missing header");
    json header = json::parse(line);
    OpenMask out;
    out.box.corner = {header.at("corner").at(0).get<std::int64_t>(),
                      header.at("corner").at(1).get<std::int64_t>()};
    out.box.width = header.at("width").get<std::int64_t>();
    out.box.height = header.at("height").get<std::int64_t>();
    out.lambda = header.at("lambda").get<double>();
    out.alpha = header.at("alpha").get<double>();
    out.open.assign(std::size_t(out.box.vertex_count()), 0);
    for (std::int64_t y = 0; y < out.box.height; ++y) {
        if (!std::getline(is, line)) throw config_error("read_mask: truncated rows");
        std::istringstream row(line);
        std::int64_t x = 0;
        bool state = false;
        std::int64_t run = 0;
        while (row >> run) {
            for (std::int64_t i = 0; i < run; ++i, ++x)
                if (state) out.open[std::size_t(y * out.box.width + x)] = 1;
            state = !state;
        }
        if (x != out.box.width) throw config_error("read_mask: row length mismatch");
    }
    return out;
}

void write_path(const std::string& path, const LatticePath& p) {
    std::ofstream os(path);
    if (!os) throw config_error("write_path: cannot open " + path);
    for (const Point& v : p.vertices) os << v.x << ',' << v.y << '\n';
}

LatticePath read_path(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw config_error("read_path: cannot open " + path);
    LatticePath p;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        auto comma = line.find(',');
        if (comma == std::string::npos) throw config_error("read_path: bad line: " + line);
        p.vertices.push_back(
            {std::stoll(line.substr(0, comma)), std::stoll(line.substr(comma + 1))});
    }
    validate_path(p);
    return p;
}

void dump_tree(std::ostream& os, const PathTree& tree) {
    struct Writer {
        const PathTree& tree;
        std::ostream& os;
        void node(std::size_t id, int indent) {
            const auto& n = tree.nodes[id];
            LatticePath sub = tree.subpath(n);
            for (int i = 0; i < indent; ++i) os << "  ";
            os << "level " << n.level << " [" << n.begin << "," << n.end << "] span "
               << sub.span() << " flow " << n.flow;
            if (n.scale >= 1) os << (n.tame ? " tame" : " untamed");
            os << '\n';
            for (std::size_t c : n.children) node(c, indent + 1);
        }
    };
    Writer{tree, os}.node(0, 0);
}

}  // namespace gff2d
