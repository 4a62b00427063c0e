import { defineConfig } from 'vitest/config';

export default defineConfig({
  test: {
    include: ['tests/**/*.test.ts'],
    environment: 'node',
    // the e2e suite boots the real service in a child process
    testTimeout: 30000,
    hookTimeout: 30000,
  },
});
