import { DEFAULT_BASE_URL } from './api.js';
import { mountApp } from './app.js';

const params = new URLSearchParams(window.location.search);
const baseUrl = params.get('service') ?? DEFAULT_BASE_URL;

const root = document.getElementById('app');
if (root === null) throw new Error('missing #app container');
void mountApp(root, baseUrl);
