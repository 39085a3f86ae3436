// include/f0vc/dsp/matrix_io.h

// Copyright 2026  The f0vc Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef F0VC_DSP_MATRIX_IO_H_
#define F0VC_DSP_MATRIX_IO_H_

#include <string>

#include "f0vc/common/matrix.h"
#include "f0vc/dsp/types.h"

namespace f0vc {

// Binary matrix file: "F0VCMAT\0", u32 version, u64 rows, u64 cols, then
// rows * cols little-endian float64 values in row-major order.
void WriteMatrix(const std::string &path, const Matrix &m);
Matrix ReadMatrix(const std::string &path);

void WriteMatrixCsv(const std::string &path, const Matrix &m);

// F0 contours travel as two-column matrices: f0_hz, voiced (0/1).
Matrix ContourToMatrix(const F0Contour &contour);
F0Contour MatrixToContour(const Matrix &m);

}  // namespace f0vc

#endif  // F0VC_DSP_MATRIX_IO_H_
