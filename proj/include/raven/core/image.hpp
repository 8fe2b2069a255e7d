#pragma once

#include <string>
#include <vector>

namespace raven::core {

enum class ColorSpace { srgb };

// H x W x 3 image, interleaved RGB, real values in [0,1]. Images stay
// continuous through the whole pipeline; quantization to 8 bits happens only
// at the PNG/JPEG boundary.
struct ImageBuffer {
    int height = 0;
    int width = 0;
    static constexpr int channels = 3;
    std::vector<float> values;  // height*width*3
    ColorSpace color_space = ColorSpace::srgb;
    std::string source_id;

    ImageBuffer() = default;
    ImageBuffer(int h, int w, std::string id = {});

    float& at(int y, int x, int c) { return values[(std::size_t(y) * width + x) * 3 + c]; }
    float at(int y, int x, int c) const { return values[(std::size_t(y) * width + x) * 3 + c]; }

    std::size_t size() const { return values.size(); }
    bool same_dims(const ImageBuffer& o) const { return height == o.height && width == o.width; }
};

// Clamps to [0,1]; throws std::runtime_error naming `stage` if any value is
// non-finite. Every operation that returns an ImageBuffer funnels through
// this.
ImageBuffer& finalize_image(ImageBuffer& img, const std::string& stage);

// Throws if the invariants do not hold (finite, in range, dims consistent).
void validate_image(const ImageBuffer& img);

double mse(const ImageBuffer& a, const ImageBuffer& b);
// peak = 1.0; returns +inf for identical images
double psnr(const ImageBuffer& a, const ImageBuffer& b);

}  // namespace raven::core
