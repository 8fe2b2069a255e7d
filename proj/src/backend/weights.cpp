#include "raven/backend/weights.hpp"

#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "raven/core/sha256.hpp"

namespace raven::backend {

namespace {

constexpr char kMagic[4] = {'R', 'V', 'N', 'W'};
constexpr std::uint32_t kVersion = 1;

template <typename T>
void write_raw(std::ostream& os, const T& v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T read_raw(std::istream& is) {
    T v;
    is.read(reinterpret_cast<char*>(&v), sizeof(T));
    if (!is) throw std::runtime_error("weight file: truncated");
    return v;
}

}  // namespace

const core::Tensor& WeightFile::get(const std::string& name) const {
    auto it = tensors.find(name);
    if (it == tensors.end()) throw std::runtime_error("weight file: missing tensor " + name);
    return it->second;
}

const core::Tensor& WeightFile::get(const std::string& name, const std::vector<int>& shape) const {
    const core::Tensor& t = get(name);
    if (t.shape != shape) {
        std::ostringstream os;
        os << "weight file: tensor " << name << " has shape [";
        for (int d : t.shape) os << d << " ";
        os << "], expected [";
        for (int d : shape) os << d << " ";
        os << "]";
        throw std::runtime_error(os.str());
    }
    return t;
}

float WeightFile::scalar(const std::string& name) const {
    const core::Tensor& t = get(name);
    if (t.numel() != 1) throw std::runtime_error("weight file: " + name + " is not a scalar");
    return t.data[0];
}

WeightFile load_weight_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("weight file: cannot open " + path);

    char magic[4];
    is.read(magic, 4);
    if (!is || std::memcmp(magic, kMagic, 4) != 0)
        throw std::runtime_error("weight file: bad magic in " + path);
    if (read_raw<std::uint32_t>(is) != kVersion)
        throw std::runtime_error("weight file: unsupported version in " + path);

    WeightFile wf;
    const auto n = read_raw<std::uint32_t>(is);
    for (std::uint32_t i = 0; i < n; ++i) {
        const auto name_len = read_raw<std::uint16_t>(is);
        std::string name(name_len, '\0');
        is.read(name.data(), name_len);
        const auto dtype = read_raw<std::uint8_t>(is);
        if (dtype != 0) throw std::runtime_error("weight file: unsupported dtype");
        const auto ndim = read_raw<std::uint8_t>(is);
        std::vector<int> shape(ndim);
        for (auto& d : shape) d = int(read_raw<std::uint32_t>(is));
        core::Tensor t(shape);
        is.read(reinterpret_cast<char*>(t.data.data()),
                std::streamsize(t.numel() * sizeof(float)));
        if (!is) throw std::runtime_error("weight file: truncated tensor " + name);
        wf.tensors.emplace(std::move(name), std::move(t));
    }
    wf.sha256 = core::Sha256::hex_digest_file(path);
    return wf;
}

void save_weight_file(const std::string& path, const std::map<std::string, core::Tensor>& tensors) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("weight file: cannot write " + path);
    os.write(kMagic, 4);
    write_raw(os, kVersion);
    write_raw(os, std::uint32_t(tensors.size()));
    for (const auto& [name, t] : tensors) {
        write_raw(os, std::uint16_t(name.size()));
        os.write(name.data(), std::streamsize(name.size()));
        write_raw(os, std::uint8_t(0));
        write_raw(os, std::uint8_t(t.shape.size()));
        for (int d : t.shape) write_raw(os, std::uint32_t(d));
        os.write(reinterpret_cast<const char*>(t.data.data()),
                 std::streamsize(t.numel() * sizeof(float)));
    }
    if (!os) throw std::runtime_error("weight file: write failed for " + path);
}

}  // namespace raven::backend
