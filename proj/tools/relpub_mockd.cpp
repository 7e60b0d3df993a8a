// Runs the bundled mock GitLab and mock archive in one process, for
// manual end-to-end runs of `relpub release` without real services.

#include <CLI11.hpp>

#include <atomic>
#include <chrono>
#include <csignal>
#include <cstdio>
#include <thread>

#include "mockserver/mock_archive.hpp"
#include "mockserver/mock_gitlab.hpp"

namespace {
std::atomic<bool> g_stop{false};
void handle_signal(int) { g_stop = true; }
}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mock GitLab + archive services (reference deposit protocol)"};

  std::string gitlab_token = "mock-gitlab-token";
  std::string archive_token = "mock-archive-token";
  std::vector<std::string> tags = {"v1.0.0"};
  int auto_publish_polls = 0;

  app.add_option("--gitlab-token", gitlab_token, "Expected PRIVATE-TOKEN value");
  app.add_option("--archive-token", archive_token, "Expected bearer token");
  app.add_option("--tag", tags, "Git tags that exist on the mock project");
  app.add_option("--auto-publish-polls", auto_publish_polls,
                 "Publish a dataset in review after this many status polls");

  CLI11_PARSE(app, argc, argv);

  relpub::mock::MockGitLab gitlab(gitlab_token);
  relpub::mock::MockArchive archive(archive_token);
  for (const auto& tag : tags) gitlab.add_tag(tag);
  if (auto_publish_polls > 0) archive.set_auto_publish_after_polls(auto_publish_polls);

  std::printf("mock gitlab:  %s (PRIVATE-TOKEN: %s)\n", gitlab.api_url().c_str(),
              gitlab_token.c_str());
  std::printf("mock archive: %s (Authorization: Bearer %s)\n", archive.base_url().c_str(),
              archive_token.c_str());
  std::printf("tags:");
  for (const auto& tag : tags) std::printf(" %s", tag.c_str());
  std::printf("\nCtrl-C to stop.\n");
  std::fflush(stdout);

  std::signal(SIGINT, handle_signal);
  std::signal(SIGTERM, handle_signal);
  while (!g_stop) std::this_thread::sleep_for(std::chrono::milliseconds(100));
  return 0;
}
