// include/f0vc/cli/cli.h

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

#ifndef F0VC_CLI_CLI_H_
#define F0VC_CLI_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

#include "f0vc/model/autoencoder.h"

namespace f0vc {

// Runs one command line (program name excluded). Returns the exit code:
// 0 success, 2 usage error, 3 data error, 4 numeric failure.
//
// Commands: synth-corpus, prepare, train, convert, eval. Every command
// accepts --config <file>, repeated --set section.key=value and --work.
// Flags override --set, which overrides the config file.
int RunCli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

// "natural", "flat:<bin>" or "file:<path>" (one bin per line, 0..256).
F0Mode ParseF0Mode(const std::string &text);

// <work>/artifacts.txt lists every file the commands produced in the work
// dir, relative to it, sorted and de-duplicated.
std::string ArtifactListPath(const std::string &work_dir);
void RecordArtifacts(const std::string &work_dir, const std::vector<std::string> &paths);

}  // namespace f0vc

#endif  // F0VC_CLI_CLI_H_
