#include <atomic>
#include <filesystem>
#include <fstream>
#include <memory>
#include <stdexcept>

#include <nlohmann/json.hpp>
#include <unistd.h>

#include "raven/backend/backend.hpp"
#include "raven/backend/tensor_io.hpp"
#include "raven/core/png_io.hpp"
#include "raven/core/proc.hpp"

// Adapter contract for a real pretrained image-to-image diffusion model.
// The adapter is any executable implementing:
//   <adapter> info
//       -> stdout JSON {downsampling_factor, T, alpha_bar:[...], fingerprint,
//                       cond_dim, attention_sites:[...]}
//   <adapter> encode  --in img.png --out z.rvt
//   <adapter> decode  --in z.rvt   --out img.png
//   <adapter> predict --latent z.rvt --t N --cond c.rvt --out eps.rvt
//                     [--capture-dir D] [--ref-dir D]
// Feature grids cross the boundary as "<site>@<t>.rvt" files inside the
// capture/ref directories, matching the in-process router semantics.

namespace raven::backend {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct ExternalModel {
    std::string exe;
    int factor = 0;
    int cond_dim = 0;
    std::vector<std::string> sites;
    fs::path scratch;
    std::atomic<std::uint64_t> seq{0};

    fs::path tmp(const std::string& stem) {
        return scratch / (stem + "-" + std::to_string(seq.fetch_add(1)));
    }
};

json run_json(const std::string& exe, const std::vector<std::string>& args) {
    std::vector<std::string> argv{exe};
    argv.insert(argv.end(), args.begin(), args.end());
    const auto res = core::run_process(argv);
    if (res.exit_code != 0)
        throw std::runtime_error("external backend: '" + exe + " " + args[0] +
                                 "' exited with code " + std::to_string(res.exit_code));
    return json::parse(res.out);
}

void run_ok(const std::string& exe, const std::vector<std::string>& args) {
    std::vector<std::string> argv{exe};
    argv.insert(argv.end(), args.begin(), args.end());
    const auto res = core::run_process(argv);
    if (res.exit_code != 0)
        throw std::runtime_error("external backend: '" + exe + " " + args[0] +
                                 "' exited with code " + std::to_string(res.exit_code));
}

}  // namespace

BackendHandles load_external_backend(const BackendSpec& spec) {
    if (spec.weights_path.empty())
        throw std::runtime_error("external backend: weights_path must name the adapter executable");
    if (!fs::exists(spec.weights_path))
        throw std::runtime_error("external backend: adapter not found at " + spec.weights_path);

    auto model = std::make_shared<ExternalModel>();
    model->exe = spec.weights_path;
    model->scratch = fs::temp_directory_path() /
                     ("raven-ext-" + std::to_string(::getpid()));
    fs::create_directories(model->scratch);

    const json info = run_json(model->exe, {"info"});
    model->factor = info.at("downsampling_factor").get<int>();
    model->cond_dim = info.at("cond_dim").get<int>();
    if (info.contains("attention_sites"))
        model->sites = info.at("attention_sites").get<std::vector<std::string>>();

    BackendHandles h;
    h.schedule = schedule_from_alpha_bar(info.at("alpha_bar").get<std::vector<double>>(),
                                         NoiseSchedule::Derivation::backend_native);
    h.fingerprint = info.at("fingerprint").get<std::string>();
    h.null_conditioning.embedding.assign(std::size_t(model->cond_dim), 0.0f);

    h.autoencoder.downsampling_factor = model->factor;
    h.autoencoder.latent_channels = info.at("latent_channels").get<int>();
    h.autoencoder.encode = [model](const ImageBuffer& img) {
        if (img.height % model->factor != 0 || img.width % model->factor != 0)
            throw std::runtime_error("external encode: dims not divisible by backend factor");
        const fs::path in = model->tmp("enc-in").replace_extension(".png");
        const fs::path out = model->tmp("enc-out").replace_extension(".rvt");
        core::write_png(in.string(), img);
        run_ok(model->exe, {"encode", "--in", in.string(), "--out", out.string()});
        Latent z = load_latent_bin(out.string());
        fs::remove(in);
        fs::remove(out);
        core::check_finite(z, "external encode");
        return z;
    };
    h.autoencoder.decode = [model](const Latent& z) {
        const fs::path in = model->tmp("dec-in").replace_extension(".rvt");
        const fs::path out = model->tmp("dec-out").replace_extension(".png");
        save_latent_bin(in.string(), z);
        run_ok(model->exe, {"decode", "--in", in.string(), "--out", out.string()});
        ImageBuffer img = core::read_png(out.string());
        fs::remove(in);
        fs::remove(out);
        return img;
    };

    h.denoiser.parameter_fingerprint = h.fingerprint;
    h.denoiser.attention_sites = model->sites;
    h.denoiser.predict = [model](const Latent& z, int t, const Conditioning& cond,
                                 AttentionRouter* router) {
        const fs::path zin = model->tmp("pred-z").replace_extension(".rvt");
        const fs::path cin = model->tmp("pred-c").replace_extension(".rvt");
        const fs::path out = model->tmp("pred-out").replace_extension(".rvt");
        save_latent_bin(zin.string(), z);
        core::Tensor cvec({int(cond.embedding.size())});
        cvec.data = cond.embedding;
        save_tensor_bin(cin.string(), cvec);

        std::vector<std::string> args{"predict", "--latent", zin.string(), "--t",
                                      std::to_string(t),  "--cond",  cin.string(),
                                      "--out",   out.string()};
        fs::path capture_dir, ref_dir;
        if (router && router->capture) {
            capture_dir = model->tmp("cap");
            fs::create_directories(capture_dir);
            args.push_back("--capture-dir");
            args.push_back(capture_dir.string());
        }
        if (router && router->mode == AttentionRouter::Mode::view_guided) {
            if (!router->reference_provider)
                throw std::runtime_error("external predict: view_guided without provider");
            ref_dir = model->tmp("ref");
            fs::create_directories(ref_dir);
            for (const auto& site : model->sites) {
                const Tensor* feats = router->reference_provider(site, t);
                if (!feats)
                    throw std::runtime_error("external predict: missing reference features for " +
                                             site);
                save_tensor_bin((ref_dir / (site + "@" + std::to_string(t) + ".rvt")).string(),
                                *feats);
            }
            args.push_back("--ref-dir");
            args.push_back(ref_dir.string());
        }

        run_ok(model->exe, args);
        Latent eps = load_latent_bin(out.string());
        eps.timestep_tag = z.timestep_tag;

        if (!capture_dir.empty()) {
            for (const auto& entry : fs::directory_iterator(capture_dir)) {
                const std::string name = entry.path().stem().string();
                const auto at = name.rfind('@');
                if (at == std::string::npos) continue;
                router->capture(name.substr(0, at), std::stoi(name.substr(at + 1)),
                                load_tensor_bin(entry.path().string()));
            }
            fs::remove_all(capture_dir);
        }
        if (!ref_dir.empty()) fs::remove_all(ref_dir);
        fs::remove(zin);
        fs::remove(cin);
        fs::remove(out);
        core::check_finite(eps, "external predict");
        return eps;
    };

    h.impl = model;
    return h;
}

}  // namespace raven::backend
