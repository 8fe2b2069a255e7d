#pragma once

#include "raven/core/image.hpp"
#include "raven/wm/key.hpp"

namespace raven::wm {

using core::ImageBuffer;

// Frequency-domain bitstream schemes. Both embed in the luminance channel:
// one-level Haar DWT, block DCT on the LL band, one payload bit per block
// assigned round-robin, recovered by summed soft QIM evidence.
//   dwt_dct:     dithered QIM on a fixed mid-frequency coefficient pair
//   dwt_dct_svd: dithered QIM on the leading singular value of the DCT block
ImageBuffer embed_dwt_dct(const ImageBuffer& x, const WatermarkKey& key);
ImageBuffer embed_dwt_dct_svd(const ImageBuffer& x, const WatermarkKey& key);

std::vector<std::uint8_t> decode_dwt_dct(const ImageBuffer& x, const WatermarkKey& key);
std::vector<std::uint8_t> decode_dwt_dct_svd(const ImageBuffer& x, const WatermarkKey& key);

}  // namespace raven::wm
