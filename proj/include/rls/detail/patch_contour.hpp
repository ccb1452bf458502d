#pragma once

// Zero-contour helpers for 3x3 local level-set patches, shared by the
// clamped construction and the transport sweep.

namespace rls::detail {

struct PatchSegment {
    double ax, ay, bx, by;
};

double point_segment_dist(double px, double py, const PatchSegment& s);

// Zero-contour segments of the signed 3x3 patch (row-major), positions in
// units of h relative to the patch center. Membership decides where
// crossings exist; at most 8 segments are produced.
int patch_contour_segments(const double p[9], const bool own[9], PatchSegment segs[8]);

}  // namespace rls::detail
