#include "raven/backend/tensor_io.hpp"

#include <cstring>
#include <fstream>
#include <stdexcept>

namespace raven::backend {

namespace {
constexpr char kMagic[4] = {'R', 'V', 'T', '1'};
}

void save_tensor_bin(const std::string& path, const core::Tensor& t) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("tensor_io: cannot write " + path);
    os.write(kMagic, 4);
    const std::uint32_t ndim = std::uint32_t(t.shape.size());
    os.write(reinterpret_cast<const char*>(&ndim), 4);
    for (int d : t.shape) {
        const std::uint32_t v = std::uint32_t(d);
        os.write(reinterpret_cast<const char*>(&v), 4);
    }
    os.write(reinterpret_cast<const char*>(t.data.data()),
             std::streamsize(t.numel() * sizeof(float)));
    if (!os) throw std::runtime_error("tensor_io: write failed for " + path);
}

core::Tensor load_tensor_bin(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("tensor_io: cannot open " + path);
    char magic[4];
    is.read(magic, 4);
    if (!is || std::memcmp(magic, kMagic, 4) != 0)
        throw std::runtime_error("tensor_io: bad magic in " + path);
    std::uint32_t ndim = 0;
    is.read(reinterpret_cast<char*>(&ndim), 4);
    if (!is || ndim > 8) throw std::runtime_error("tensor_io: bad rank in " + path);
    std::vector<int> shape(ndim);
    for (auto& d : shape) {
        std::uint32_t v = 0;
        is.read(reinterpret_cast<char*>(&v), 4);
        d = int(v);
    }
    core::Tensor t(shape);
    is.read(reinterpret_cast<char*>(t.data.data()), std::streamsize(t.numel() * sizeof(float)));
    if (!is) throw std::runtime_error("tensor_io: truncated data in " + path);
    return t;
}

void save_latent_bin(const std::string& path, const core::Latent& z) {
    core::Tensor t({z.channels, z.height, z.width});
    t.data = z.values;
    save_tensor_bin(path, t);
}

core::Latent load_latent_bin(const std::string& path) {
    core::Tensor t = load_tensor_bin(path);
    if (t.ndim() != 3) throw std::runtime_error("tensor_io: latent must be rank 3: " + path);
    core::Latent z(t.dim(0), t.dim(1), t.dim(2));
    z.values = std::move(t.data);
    return z;
}

}  // namespace raven::backend
