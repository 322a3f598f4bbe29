#!/usr/bin/env node
import { run } from './cli.js';

process.exit(run(process.argv.slice(2)));
