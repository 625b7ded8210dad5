import { defineConfig } from "vitest/config";

export default defineConfig({
  test: {
    environment: "node",
    include: ["tests/**/*.test.ts"],
    // the contract suite boots the real audit service
    testTimeout: 30_000,
    hookTimeout: 60_000,
  },
});
